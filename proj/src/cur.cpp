#include "adacur/cur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "adacur/errors.hpp"
#include "adacur/sampling.hpp"

namespace adacur {
namespace {

constexpr Index kBlock = 64;

Index ceil_count(double x) { return static_cast<Index>(std::ceil(x - 1e-9)); }

std::vector<Index> concat(std::vector<Index> a, const std::vector<Index>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Q_C (Q_C^T A Q_R) Q_R^T, which equals C C^+ A R^+ R.
LowRankFactors projection_factors(const Matrix& a, const Matrix& c, const Matrix& r) {
  Matrix qc = orthonormal_basis(c);
  Matrix qr = svd_full(r).v;
  Matrix core = multiply(multiply_tn(qc, a), qr);
  return {std::move(qc), std::move(core), std::move(qr)};
}

std::uint64_t stage_seed(std::uint64_t seed, std::uint64_t stage) { return derive_seed(seed, 100 + stage); }

}  // namespace

CurPlan CurPlan::from_epsilon(Index k, double epsilon) {
  CurPlan p;
  p.columns = ColSelectParams::from_epsilon(k, epsilon);
  p.extra_rows = ceil_count(static_cast<double>(p.columns.total()) / epsilon);
  return p;
}

CurPlan CurPlan::from_multiplier(Index k, Index a) {
  if (a < 2) throw ArgumentError("multiplier a must be >= 2");
  const Index c = a * k;
  CurPlan p;
  p.columns = ColSelectParams::from_total(k, c);
  p.extra_rows = a * c - c;
  return p;
}

CurDecomposition adaptive_cur(const Matrix& a, Index k, double epsilon, std::uint64_t seed) {
  const CurPlan plan = CurPlan::from_epsilon(k, epsilon);
  const Index c = plan.col_count();
  const Index r = plan.row_count();
  if (c >= a.cols() || r >= a.rows()) {
    throw ArgumentError("adaptive_cur: k=" + std::to_string(k) + ", eps=" + std::to_string(epsilon) + " needs c=" +
                        std::to_string(c) + ", r=" + std::to_string(r) + "; minimum feasible size is (m, n) = (" +
                        std::to_string(r + 1) + ", " + std::to_string(c + 1) + "), got (" + std::to_string(a.rows()) +
                        ", " + std::to_string(a.cols()) + ")");
  }
  return adaptive_cur(a, plan, seed);
}

CurDecomposition adaptive_cur(const Matrix& a, const CurPlan& plan, std::uint64_t seed) {
  const Index c = plan.col_count();
  if (c >= a.cols() || c >= a.rows()) {
    throw ArgumentError("adaptive_cur: c = r1 = " + std::to_string(c) + " must be below both dimensions; minimum "
                        "feasible size is (m, n) = (" + std::to_string(c + 1) + ", " + std::to_string(c + 1) +
                        "), got (" + std::to_string(a.rows()) + ", " + std::to_string(a.cols()) + ")");
  }
  if (plan.extra_rows < 1) throw ArgumentError("adaptive_cur: need at least one residual row");

  CurDecomposition out;
  out.method = CurMethod::adaptive;
  ColumnSelection cols = near_optimal_select(a, plan.columns, stage_seed(seed, 0));
  ColumnSelection rows1 = near_optimal_select(transpose(a), plan.columns, stage_seed(seed, 1));
  const Matrix r1 = transpose(rows1.c);
  const Selection rows2 = adaptive_sample(a, r1, Axis::rows, plan.extra_rows, stage_seed(seed, 2));

  out.col_indices = std::move(cols.sel.indices);
  out.row_indices = concat(std::move(rows1.sel.indices), rows2.indices);
  out.c = std::move(cols.c);
  out.r = select_rows(a, out.row_indices);
  out.u = intersection_matrix(a, out.c, out.r);
  out.factors = projection_factors(a, out.c, out.r);
  return out;
}

CurDecomposition subspace_cur(const Matrix& a, Index k, Index c, Index r, std::uint64_t seed) {
  if (c < 1 || c > a.cols()) throw ArgumentError("subspace_cur: c must lie in [1, n]");
  if (r < 1 || r > a.rows()) throw ArgumentError("subspace_cur: r must lie in [1, m]");

  const SamplingDistribution col_dist = subspace_distribution(a, k, Axis::columns);
  Selection cols = sample_without_replacement(col_dist, c, stage_seed(seed, 0));
  const auto dc = selection_scaling(col_dist, cols.indices);
  cols.scaling = dc;
  Matrix cmat = scale_columns(select_columns(a, cols.indices), dc);

  const TruncatedSvd csvd = svd_full(cmat);
  const Index kc = std::min(c, csvd.rank());
  const SamplingDistribution row_dist = subspace_distribution(cmat, kc, Axis::rows);
  Selection rows = sample_without_replacement(row_dist, r, stage_seed(seed, 1));
  const auto dr = selection_scaling(row_dist, rows.indices);

  const Matrix w = scale_rows(dr, select_rows(cmat, rows.indices));
  Matrix rmat = scale_rows(dr, select_rows(a, rows.indices));

  // C W^+ R = (C V_W) diag(1/sigma) (R^T U_W)^T
  const TruncatedSvd ws = svd_full(w);
  std::vector<double> inv(ws.rank());
  for (Index i = 0; i < ws.rank(); ++i) inv[i] = 1.0 / ws.sigma[i];

  CurDecomposition out;
  out.method = CurMethod::subspace;
  out.col_indices = std::move(cols.indices);
  out.row_indices = std::move(rows.indices);
  out.u = multiply_nt(scale_columns(ws.v, inv), ws.u);
  out.factors = {multiply(cmat, ws.v), Matrix::diagonal(inv), multiply_tn(rmat, ws.u)};
  out.c = std::move(cmat);
  out.r = std::move(rmat);
  return out;
}

CurDecomposition uniform_cur(const Matrix& a, Index c, Index r, std::uint64_t seed) {
  if (c < 1 || c > a.cols()) throw ArgumentError("uniform_cur: c must lie in [1, n]");
  if (r < 1 || r > a.rows()) throw ArgumentError("uniform_cur: r must lie in [1, m]");
  CurDecomposition out;
  out.method = CurMethod::uniform;
  out.col_indices = sample_without_replacement(uniform_distribution(a.cols()), c, stage_seed(seed, 0)).indices;
  out.row_indices = sample_without_replacement(uniform_distribution(a.rows()), r, stage_seed(seed, 1)).indices;
  out.c = select_columns(a, out.col_indices);
  out.r = select_rows(a, out.row_indices);
  out.u = intersection_matrix(a, out.c, out.r);
  out.factors = projection_factors(a, out.c, out.r);
  return out;
}

Matrix intersection_matrix(const Matrix& a, const Matrix& c, const Matrix& r) {
  if (c.rows() != a.rows() || r.cols() != a.cols()) throw ArgumentError("intersection_matrix: shape mismatch");
  const Matrix c_pinv = pinv(c);
  const Matrix r_pinv = pinv(r);
  Matrix u(c.cols(), r.rows());
  std::vector<Index> block;
  for (Index start = 0; start < a.cols(); start += kBlock) {
    block.clear();
    for (Index j = start; j < std::min(a.cols(), start + kBlock); ++j) block.push_back(j);
    // (C^+ A_blk)(R^+)_blk
    u = u + multiply(multiply(c_pinv, select_columns(a, block)), select_rows(r_pinv, block));
  }
  return u;
}

double error_ratio(const Matrix& a, const Matrix& approx, Index k) {
  return error_ratio_given_tail(a, approx, tail_frobenius(a, k));
}

double error_ratio_given_tail(const Matrix& a, const Matrix& approx, double tail) {
  const double floor =
      static_cast<double>(std::max(a.rows(), a.cols())) * std::numeric_limits<double>::epsilon() * frobenius(a);
  if (!(tail > floor)) throw ArgumentError("error_ratio: ||A - A_k||_F is zero; k must be below rank(A)");
  if (approx.rows() != a.rows() || approx.cols() != a.cols()) throw ArgumentError("error_ratio: shape mismatch");
  return frobenius(a - approx) / tail;
}

}  // namespace adacur
