#include "adacur/colselect.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "adacur/dualset.hpp"
#include "adacur/errors.hpp"
#include "adacur/matcore.hpp"

namespace adacur {
namespace {

Index ceil_count(double x) {
  // Absorb roundoff such as 2*5/0.5 landing a hair above 20.
  return static_cast<Index>(std::ceil(x - 1e-9));
}

Matrix gaussian(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (double& v : g.data()) v = normal(rng);
  return g;
}

}  // namespace

ColSelectParams ColSelectParams::from_epsilon(Index k, double epsilon, double slack) {
  if (k < 2) throw ArgumentError("column selection needs k >= 2");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ArgumentError("epsilon must lie in (0, 1]");
  if (!(slack > 0.0)) throw ArgumentError("dual-set slack must be positive");
  const double base = 2.0 * static_cast<double>(k) / epsilon;
  ColSelectParams p;
  p.k = k;
  p.adaptive_count = ceil_count(base);
  p.dual_count = std::max(k + 1, ceil_count(slack * base));
  return p;
}

ColSelectParams ColSelectParams::from_total(Index k, Index c) {
  if (k < 2) throw ArgumentError("column selection needs k >= 2");
  if (c < k + 2) {
    throw ArgumentError("column total " + std::to_string(c) + " below minimum k + 2 = " + std::to_string(k + 2));
  }
  ColSelectParams p;
  p.k = k;
  p.dual_count = std::max(k + 1, ceil_count(0.2 * static_cast<double>(c)));
  p.adaptive_count = c - p.dual_count;
  return p;
}

void ColSelectParams::validate() const {
  if (k < 2) throw ArgumentError("column selection needs k >= 2");
  if (dual_count <= k) throw ArgumentError("dual-set count must exceed k");
  if (adaptive_count < 1) throw ArgumentError("adaptive count must be >= 1");
}

Matrix ApproxSvd::reconstruct() const { return multiply_nt(scale_columns(u, sigma), v); }

ApproxSvd randomized_svd(const Matrix& a, Index k, Index oversample, Index power_iters, std::uint64_t seed) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (k < 1) throw ArgumentError("randomized_svd: k must be >= 1");
  if (k + oversample > std::min(m, n)) {
    throw ArgumentError("randomized_svd: k + oversample = " + std::to_string(k + oversample) + " exceeds min(m, n) = " +
                        std::to_string(std::min(m, n)));
  }
  Matrix q = orthonormal_basis(multiply(a, gaussian(n, k + oversample, seed)));
  for (Index it = 0; it < power_iters && q.cols() > 0; ++it) {
    const Matrix z = orthonormal_basis(multiply_tn(a, q));
    if (z.cols() == 0) break;
    q = orthonormal_basis(multiply(a, z));
  }
  ApproxSvd out;
  if (q.cols() == 0) {
    out.u = Matrix(m, 0);
    out.v = Matrix(n, 0);
    return out;
  }
  const TruncatedSvd small = svd_truncated(multiply_tn(q, a), k);
  out.u = multiply(q, small.u);
  out.sigma = small.sigma;
  out.v = small.v;
  return out;
}

ColumnSelection near_optimal_select(const Matrix& a, const ColSelectParams& params, std::uint64_t seed) {
  params.validate();
  const Index n = a.cols();
  if (params.total() >= n) {
    throw ArgumentError("near_optimal_select: c = " + std::to_string(params.total()) + " must be below n = " +
                        std::to_string(n));
  }
  const Index p = std::min(params.oversample, std::min(a.rows(), n) - std::min(params.k, std::min(a.rows(), n)));
  const ApproxSvd approx = randomized_svd(a, params.k, p, params.power_iters, derive_seed(seed, 0));
  if (approx.rank() == 0) throw ArgumentError("near_optimal_select: matrix is numerically zero");

  DualSetInput in;
  in.v = approx.v;
  in.x = a - multiply_nt(multiply(a, approx.v), approx.v);
  in.r = params.dual_count;
  const WeightVector w = dual_set_sparsify(in);

  // Zero-weight columns are dropped; positive weights do not change the span.
  ColumnSelection out;
  out.sel.indices = w.support();
  out.dual_selected = out.sel.indices.size();
  const Matrix c1 = select_columns(a, out.sel.indices);

  const Selection extra = adaptive_sample(a, c1, Axis::columns, params.adaptive_count, derive_seed(seed, 1));
  out.sel.indices.insert(out.sel.indices.end(), extra.indices.begin(), extra.indices.end());
  out.c = select_columns(a, out.sel.indices);
  return out;
}

}  // namespace adacur
