#pragma once

#include <vector>

#include "adacur/matrix.hpp"

namespace adacur {

/// Two point sets indexed by the same n items.
///  - x: l x n, column i is x_i (Frobenius side)
///  - v: n x k, row i is v_i, with sum_i v_i v_i^T = I_k (spectral side)
///  - r: number of weights allowed to be nonzero, k < r < n
struct DualSetInput {
  Matrix x;
  Matrix v;
  Index r = 0;
};

struct WeightVector {
  std::vector<double> s;

  Index nonzero_count() const;
  /// Indices with s_i > 0, ascending.
  std::vector<Index> support() const;
};

/// Deterministic spectral-Frobenius sparsification. The result satisfies
///   lambda_k(sum_i s_i v_i v_i^T) >= (1 - sqrt(k/r))^2
///   trace(sum_i s_i x_i x_i^T)  <= ||X||_F^2
/// with at most r nonzero weights.
///
/// Each of the r iterations scans indices in ascending order and takes the
/// first one whose admissible interval for 1/t is non-empty, then uses the
/// interval midpoint. Throws InternalFailure if no index qualifies.
WeightVector dual_set_sparsify(const DualSetInput& input);

}  // namespace adacur
