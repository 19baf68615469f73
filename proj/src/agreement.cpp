#include "topicnoise/agreement.hpp"

#include <algorithm>

namespace topicnoise {
namespace {

bool contains(std::span<const Term> range, const Term& term) {
  return std::find(range.begin(), range.end(), term) != range.end();
}

std::vector<Term> distinct_sorted(std::span<const Term> range) {
  std::vector<Term> out(range.begin(), range.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double jaccard(std::span<const Term> a, std::span<const Term> b) {
  const auto sa = distinct_sorted(a);
  const auto sb = distinct_sorted(b);
  if (sa.empty() && sb.empty()) return 1.0;
  std::vector<Term> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  const std::size_t unioned = sa.size() + sb.size() - common.size();
  return static_cast<double>(common.size()) / static_cast<double>(unioned);
}

double average_jaccard(std::span<const Term> a, std::span<const Term> b) {
  if (a.empty() || b.empty()) throw DataError("average_jaccard needs two non-empty ranked lists");
  const std::size_t depth = std::min(a.size(), b.size());
  // Ranked lists hold distinct terms, so the prefix intersection grows by
  // one for each new term already present in the other prefix.
  std::size_t common = 0;
  double sum = 0.0;
  for (std::size_t t = 0; t < depth; ++t) {
    if (a[t] == b[t]) {
      ++common;
    } else {
      if (contains(b.first(t), a[t])) ++common;
      if (contains(a.first(t), b[t])) ++common;
    }
    const std::size_t prefix = t + 1;
    sum += static_cast<double>(common) / static_cast<double>(2 * prefix - common);
  }
  return sum / static_cast<double>(depth);
}

SimilarityMatrix similarity_matrix(std::span<const RankedTermList> rows, std::span<const RankedTermList> cols) {
  if (rows.size() != cols.size()) {
    throw DimensionMismatch("similarity_matrix: " + std::to_string(rows.size()) + " topics vs " +
                            std::to_string(cols.size()));
  }
  const auto k = static_cast<Eigen::Index>(rows.size());
  SimilarityMatrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& a = rows[static_cast<std::size_t>(i)];
      const auto& b = cols[static_cast<std::size_t>(j)];
      // a topic that received no tokens has an empty list
      if (a.empty() || b.empty()) {
        m(i, j) = a.empty() && b.empty() ? 1.0 : 0.0;
      } else {
        m(i, j) = average_jaccard(a, b);
      }
    }
  }
  return m;
}

AgreementResult agreement(std::span<const RankedTermList> rows, std::span<const RankedTermList> cols) {
  AgreementResult result = hungarian_match(similarity_matrix(rows, cols));
  for (const auto& r : rows) {
    for (const auto& c : cols) result.truncated = result.truncated || r.size() != c.size();
  }
  return result;
}

AgreementResult agreement(const TopicModel& first, const TopicModel& second, std::size_t depth) {
  if (first.topic_count() != second.topic_count()) {
    throw DimensionMismatch("cannot compare models with " + std::to_string(first.topic_count()) + " and " +
                            std::to_string(second.topic_count()) + " topics");
  }
  const auto a = top_term_lists(first, depth);
  const auto b = top_term_lists(second, depth);
  return agreement(a, b);
}

}  // namespace topicnoise
