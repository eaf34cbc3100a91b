#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adacur/boosting.hpp"
#include "adacur/colselect.hpp"
#include "adacur/matcore.hpp"
#include "adacur/sampling.hpp"

namespace adacur {

enum class NystromVariant { standard, standard_rank_k, ensemble, modified };

/// Approximation c * u * c^T of a symmetric matrix. For the ensemble variant
/// c stacks every sample side by side and u is block diagonal with the
/// weighted per-sample intersection matrices.
struct NystromApproximation {
  std::vector<Index> col_indices;
  Matrix c;
  Matrix u;
  NystromVariant variant = NystromVariant::standard;
  std::optional<std::vector<double>> weights;
  LowRankFactors factors;

  Matrix reconstruct() const { return factors.reconstruct(); }
};

/// (a + a^T) / 2 when a is symmetric to 1e-8 relative; ArgumentError otherwise.
Matrix symmetrized(const Matrix& a);

/// u = W^+, or (W_k)^+ when `rank` is given. W is the principal submatrix at
/// the selection, scaled when the selection carries scaling.
NystromApproximation standard_nystrom(const Matrix& a, const Selection& sel, std::optional<Index> rank = std::nullopt);

/// Weighted sum of standard approximations; uniform 1/t weights by default.
NystromApproximation ensemble_nystrom(const Matrix& a, const std::vector<Selection>& samples,
                                      std::optional<std::vector<double>> weights = std::nullopt);

/// u = C^+ A (C^+)^T. Needs symmetry only, not semidefiniteness.
NystromApproximation modified_nystrom(const Matrix& a, const Selection& sel);

/// c1 columns by near-optimal selection, then c2 by adaptive sampling.
struct NystromPlan {
  ColSelectParams first;
  Index extra_columns = 0;

  /// c1 = (2k/eps)(1 + slack), c2 = ceil(c1/eps).
  static NystromPlan from_epsilon(Index k, double epsilon);
  /// c = a k split as c1 = round(c eps/(1 + eps)), c2 = c - c1 with
  /// eps = sqrt(2k/c), so that c2 is about c1/eps.
  static NystromPlan from_multiplier(Index k, Index a);

  Index total() const { return first.total() + extra_columns; }
};

/// The column indices chosen by the adaptive algorithm: near-optimal C1
/// followed by the residual draws C2.
Selection adaptive_nystrom_selection(const Matrix& a, const NystromPlan& plan, std::uint64_t seed);

NystromApproximation adaptive_modified_nystrom(const Matrix& a, Index k, double epsilon, std::uint64_t seed);
NystromApproximation adaptive_modified_nystrom(const Matrix& a, const NystromPlan& plan, std::uint64_t seed);

/// Leverage-score baseline: p_j = l_j / k, scaling 1/sqrt(c p_j), u = W^+.
NystromApproximation subspace_nystrom(const Matrix& a, Index k, Index c, std::uint64_t seed,
                                      bool with_replacement = true);

/// Uniform baseline with the same scaling convention.
NystromApproximation uniform_nystrom(const Matrix& a, Index c, std::uint64_t seed, bool with_replacement = true);

}  // namespace adacur
