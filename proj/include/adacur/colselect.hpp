#pragma once

#include <cstdint>

#include "adacur/matrix.hpp"
#include "adacur/sampling.hpp"

namespace adacur {

/// Column budget for near-optimal selection: `dual_count` columns are kept by
/// dual-set sparsification and `adaptive_count` more are drawn from the
/// residual.
struct ColSelectParams {
  Index k = 0;
  Index dual_count = 0;
  Index adaptive_count = 0;
  Index oversample = 10;
  Index power_iters = 2;

  /// adaptive = ceil(2k/eps); dual = max(k + 1, ceil(slack * 2k/eps)).
  static ColSelectParams from_epsilon(Index k, double epsilon, double slack = 0.25);
  /// Split a fixed total c >= k + 2: dual = max(k + 1, ceil(c/5)), rest adaptive.
  static ColSelectParams from_total(Index k, Index c);

  Index total() const { return dual_count + adaptive_count; }
  void validate() const;
};

struct ApproxSvd {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;

  Index rank() const { return sigma.size(); }
  Matrix reconstruct() const;
};

/// Gaussian range finder with power iterations. May return fewer than k
/// triplets when a has lower numerical rank.
ApproxSvd randomized_svd(const Matrix& a, Index k, Index oversample, Index power_iters, std::uint64_t seed);

struct ColumnSelection {
  Matrix c;
  Selection sel;
  /// Leading entries of sel.indices that came from the dual-set stage.
  Index dual_selected = 0;
};

ColumnSelection near_optimal_select(const Matrix& a, const ColSelectParams& params, std::uint64_t seed);

}  // namespace adacur
