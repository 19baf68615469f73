#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "topicnoise/error.hpp"
#include "topicnoise/lda.hpp"

namespace topicnoise {

template <typename Scalar>
using SimilarityMatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using SimilarityMatrix = SimilarityMatrixT<double>;

struct AgreementResult {
  double score = 0.0;
  std::vector<int> matching;     ///< row topic i is matched to column topic matching[i]
  std::vector<double> per_pair;  ///< similarity of each matched pair, by row
  bool truncated = false;        ///< some pair of lists had unequal length
};

/// |A ∩ B| / |A ∪ B| over the distinct elements of each range; 1 when both
/// are empty.
double jaccard(std::span<const Term> a, std::span<const Term> b);

/// Mean Jaccard index of the depth-t prefixes, t = 1..d. Lists of unequal
/// length are cut to the shorter one. Throws DataError if either is empty.
double average_jaccard(std::span<const Term> a, std::span<const Term> b);

/// Entry (i, j) is average_jaccard(rows[i], cols[j]); an empty list scores 0
/// against a non-empty one and 1 against another empty one. Throws
/// DimensionMismatch unless both sides have the same number of lists.
SimilarityMatrix similarity_matrix(std::span<const RankedTermList> rows, std::span<const RankedTermList> cols);

namespace detail {

/// Shortest augmenting path assignment on a square cost matrix (O(n^3)).
/// Returns the column assigned to each row.
template <typename Derived>
std::vector<int> min_cost_assignment(const Eigen::MatrixBase<Derived>& cost) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(cost.rows());
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  // 1-based potentials; column 0 is a virtual source.
  std::vector<Scalar> u(static_cast<std::size_t>(n) + 1, 0), v(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> row_of(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    row_of[0] = i;
    int j0 = 0;
    std::vector<Scalar> min_to(static_cast<std::size_t>(n) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = row_of[j0];
      Scalar delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Scalar reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < min_to[j]) {
          min_to[j] = reduced;
          way[j] = j0;
        }
        if (min_to[j] < delta) {
          delta = min_to[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          min_to[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j) {
    if (row_of[j] > 0) assignment[static_cast<std::size_t>(row_of[j] - 1)] = j - 1;
  }
  return assignment;
}

}  // namespace detail

/// One-to-one matching of rows to columns maximising the summed similarity
/// (solved as minimum cost on 1 - similarity). The score is that sum divided
/// by k, accumulated in row order.
template <typename Derived>
AgreementResult hungarian_match(const Eigen::MatrixBase<Derived>& similarity) {
  using Scalar = typename Derived::Scalar;
  if (similarity.rows() != similarity.cols()) {
    throw DimensionMismatch("hungarian_match needs a square matrix, got " + std::to_string(similarity.rows()) + "x" +
                            std::to_string(similarity.cols()));
  }
  AgreementResult result;
  const auto k = similarity.rows();
  if (k == 0) return result;
  const SimilarityMatrixT<Scalar> cost = (Scalar(1) - similarity.array()).matrix();
  result.matching = detail::min_cost_assignment(cost);
  result.per_pair.reserve(static_cast<std::size_t>(k));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double s = static_cast<double>(similarity(i, result.matching[static_cast<std::size_t>(i)]));
    result.per_pair.push_back(s);
    sum += s;
  }
  result.score = sum / static_cast<double>(k);
  return result;
}

/// Matches the top-`depth` term lists of two topic sets.
AgreementResult agreement(std::span<const RankedTermList> rows, std::span<const RankedTermList> cols);

/// Agreement of two models at the given depth. Throws DimensionMismatch when
/// their topic counts differ.
AgreementResult agreement(const TopicModel& first, const TopicModel& second, std::size_t depth = kDefaultDepth);

}  // namespace topicnoise
