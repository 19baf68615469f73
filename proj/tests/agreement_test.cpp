#include "topicnoise/agreement.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

namespace topicnoise {
namespace {

RankedTermList words(std::initializer_list<const char*> w) { return RankedTermList(w.begin(), w.end()); }

// Mean over t of |prefix_t(a) ∩ prefix_t(b)| / |prefix_t(a) ∪ prefix_t(b)|,
// each prefix rebuilt from scratch.
double prefix_oracle(const RankedTermList& a, const RankedTermList& b) {
  const std::size_t d = std::min(a.size(), b.size());
  double sum = 0;
  for (std::size_t t = 1; t <= d; ++t) {
    const std::set<Term> pa(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(t));
    const std::set<Term> pb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(t));
    std::vector<Term> inter, uni;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(inter));
    std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(uni));
    sum += static_cast<double>(inter.size()) / static_cast<double>(uni.size());
  }
  return sum / static_cast<double>(d);
}

RankedTermList random_list(std::mt19937& gen, std::size_t length, int pool) {
  std::vector<int> ids(static_cast<std::size_t>(pool));
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), gen);
  RankedTermList out;
  for (std::size_t i = 0; i < length; ++i) out.push_back("t" + std::to_string(ids[i]));
  return out;
}

// Best row-order sum over every permutation.
double brute_force_best(const SimilarityMatrix& s) {
  std::vector<int> perm(static_cast<std::size_t>(s.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  double best = -1;
  do {
    double sum = 0;
    for (Eigen::Index i = 0; i < s.rows(); ++i) sum += s(i, perm[static_cast<std::size_t>(i)]);
    best = std::max(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(s.rows());
}

TEST(Jaccard, Basics) {
  EXPECT_DOUBLE_EQ(jaccard(words({"a", "b", "c"}), words({"b", "c", "d"})), 0.5);
  EXPECT_DOUBLE_EQ(jaccard(words({"a", "a"}), words({"a"})), 1.0);
  EXPECT_DOUBLE_EQ(jaccard(words({}), words({})), 1.0);
  EXPECT_DOUBLE_EQ(jaccard(words({"a"}), words({})), 0.0);
}

TEST(AverageJaccard, WorkedExamples) {
  // prefixes: {a}/{b} = 0, {a,b}/{b,a} = 1, {a,b,c}/{b,a,c} = 1
  EXPECT_DOUBLE_EQ(average_jaccard(words({"a", "b", "c"}), words({"b", "a", "c"})), 2.0 / 3.0);
  // 1, 1/3, 1
  EXPECT_DOUBLE_EQ(average_jaccard(words({"a", "b", "c"}), words({"a", "c", "b"})), 7.0 / 9.0);
  // 0, 1/3, 2/4 ... truncated to two: (0 + 1/3) / 2
  EXPECT_DOUBLE_EQ(average_jaccard(words({"a", "b"}), words({"b", "c", "a"})), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(average_jaccard(words({"x", "y"}), words({"x", "y"})), 1.0);
  EXPECT_DOUBLE_EQ(average_jaccard(words({"x", "y"}), words({"p", "q"})), 0.0);
  EXPECT_THROW(average_jaccard(words({}), words({"a"})), DataError);
}

TEST(AverageJaccard, MatchesPrefixOracle) {
  std::mt19937 gen(11);
  std::uniform_int_distribution<std::size_t> len(1, 25);
  std::uniform_int_distribution<int> pool(25, 60);
  for (int trial = 0; trial < 500; ++trial) {
    const int p = pool(gen);
    const auto a = random_list(gen, len(gen), p);
    const auto b = random_list(gen, len(gen), p);
    ASSERT_NEAR(average_jaccard(a, b), prefix_oracle(a, b), 1e-12);
    ASSERT_NEAR(average_jaccard(a, b), average_jaccard(b, a), 1e-15);
    const double s = average_jaccard(a, b);
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, 1.0);
  }
}

TEST(Hungarian, TwoByTwo) {
  SimilarityMatrix s(2, 2);
  s << 0.9, 0.1,
       0.8, 0.2;
  const auto r = hungarian_match(s);
  EXPECT_DOUBLE_EQ(r.score, 0.55);
  EXPECT_EQ(r.matching, (std::vector<int>{0, 1}));
  // a greedy pass would take 0.9 first; here the best pairing is off-diagonal
  s << 0.9, 0.8,
       0.7, 0.0;
  const auto g = hungarian_match(s);
  EXPECT_EQ(g.matching, (std::vector<int>{1, 0}));
  EXPECT_DOUBLE_EQ(g.score, 0.75);
}

TEST(Hungarian, MatchesExhaustiveSearch) {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 7;
    SimilarityMatrix s(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) s(i, j) = trial % 3 == 0 ? std::round(u(gen) * 4) / 4 : u(gen);
    }
    const auto r = hungarian_match(s);
    ASSERT_NEAR(r.score, brute_force_best(s), 1e-12) << s;
    std::vector<int> sorted = r.matching;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < k; ++i) ASSERT_EQ(sorted[static_cast<std::size_t>(i)], i);
  }
}

TEST(Hungarian, FloatScalarAndShapeErrors) {
  Eigen::MatrixXf s(3, 3);
  s << 0, 1, 0,
       0, 0, 1,
       1, 0, 0;
  const auto r = hungarian_match(s);
  EXPECT_EQ(r.matching, (std::vector<int>{1, 2, 0}));
  EXPECT_DOUBLE_EQ(r.score, 1.0);
  EXPECT_THROW(hungarian_match(Eigen::MatrixXd::Zero(2, 3)), DimensionMismatch);
  EXPECT_EQ(hungarian_match(Eigen::MatrixXd(0, 0)).score, 0.0);
}

TEST(SimilarityMatrix, EntriesAndEmptyLists) {
  const std::vector<RankedTermList> rows{words({"a", "b"}), {}};
  const std::vector<RankedTermList> cols{words({"b", "a"}), {}};
  const auto s = similarity_matrix(rows, cols);
  EXPECT_DOUBLE_EQ(s(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(s(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(s(1, 1), 1.0);
  EXPECT_THROW(similarity_matrix(rows, std::vector<RankedTermList>{words({"a"})}), DimensionMismatch);
}

TEST(Agreement, IdenticalDisjointAndSymmetric) {
  std::mt19937 gen(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RankedTermList> a, b, c;
    for (int k = 0; k < 5; ++k) {
      a.push_back(random_list(gen, 10, 40));
      b.push_back(random_list(gen, 10, 40));
      RankedTermList other;
      for (const auto& t : a.back()) other.push_back("x" + t);
      c.push_back(other);
    }
    auto shuffled = a;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    EXPECT_DOUBLE_EQ(agreement(a, shuffled).score, 1.0);
    EXPECT_DOUBLE_EQ(agreement(a, c).score, 0.0);
    EXPECT_NEAR(agreement(a, b).score, agreement(b, a).score, 1e-12);
    const auto r = agreement(a, b);
    EXPECT_FALSE(r.truncated);
    EXPECT_NEAR(std::accumulate(r.per_pair.begin(), r.per_pair.end(), 0.0) / 5, r.score, 1e-12);
  }
}

TEST(Agreement, FlagsTruncationAndMismatch) {
  const std::vector<RankedTermList> a{words({"a", "b", "c"})};
  const std::vector<RankedTermList> b{words({"a", "b"})};
  const auto r = agreement(a, b);
  EXPECT_TRUE(r.truncated);
  EXPECT_DOUBLE_EQ(r.score, 1.0);
  EXPECT_THROW(agreement(a, std::vector<RankedTermList>{}), DimensionMismatch);

  TopicModel m2, m3;
  m2.config.topics = 2;
  m2.topics = {words({"a"}), words({"b"})};
  m3.config.topics = 3;
  m3.topics = {words({"a"}), words({"b"}), words({"c"})};
  EXPECT_THROW(agreement(m2, m3), DimensionMismatch);
  EXPECT_DOUBLE_EQ(agreement(m2, m2).score, 1.0);
}

}  // namespace
}  // namespace topicnoise
