#include "adacur/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "adacur/errors.hpp"

namespace adacur {
namespace {

constexpr double kSymmetryTol = 1e-8;
constexpr double kWeightTol = 1e-12;

Index ceil_count(double x) { return static_cast<Index>(std::ceil(x - 1e-9)); }

void check_indices(const Selection& sel, Index m) {
  if (sel.size() == 0) throw ArgumentError("nystrom: empty selection");
  for (Index i : sel.indices) {
    if (i >= m) throw ArgumentError("nystrom: column index " + std::to_string(i) + " out of range");
  }
  if (sel.scaling && sel.scaling->size() != sel.size()) throw ArgumentError("nystrom: scaling length mismatch");
}

Matrix selected_columns(const Matrix& a, const Selection& sel) {
  Matrix c = select_columns(a, sel.indices);
  return sel.scaling ? scale_columns(c, *sel.scaling) : c;
}

// W^+ (or (W_k)^+) as V diag(1/lambda) V^T over the kept eigenpairs.
struct PseudoInverse {
  Matrix vectors;
  std::vector<double> inv_values;
};

PseudoInverse symmetric_pinv(const Matrix& w, std::optional<Index> rank) {
  const SymmetricEigen eig = symmetric_eigen(w);
  const Index n = w.rows();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return std::abs(eig.values[x]) > std::abs(eig.values[y]); });
  const double top = n == 0 ? 0.0 : std::abs(eig.values[order.front()]);
  const double cutoff = rank_cutoff(top, n, n);
  Index keep = 0;
  while (keep < n && std::abs(eig.values[order[keep]]) > cutoff) ++keep;
  if (rank) keep = std::min(keep, *rank);

  PseudoInverse out{Matrix(n, keep), std::vector<double>(keep)};
  for (Index r = 0; r < keep; ++r) {
    const Index j = order[r];
    out.inv_values[r] = 1.0 / eig.values[j];
    for (Index i = 0; i < n; ++i) out.vectors(i, r) = eig.vectors(i, j);
  }
  return out;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols);
  Index r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (Index i = 0; i < b.rows(); ++i)
      for (Index j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

Selection draw(const SamplingDistribution& dist, Index c, std::uint64_t seed, bool with_replacement) {
  Selection sel = with_replacement ? sample_iid(dist, c, seed) : sample_without_replacement(dist, c, seed);
  sel.scaling = selection_scaling(dist, sel.indices);
  return sel;
}

}  // namespace

Matrix symmetrized(const Matrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("nystrom: matrix must be square");
  if (asymmetry(a) > kSymmetryTol) throw ArgumentError("nystrom: matrix is not symmetric within 1e-8");
  return 0.5 * (a + transpose(a));
}

NystromApproximation standard_nystrom(const Matrix& a_in, const Selection& sel, std::optional<Index> rank) {
  const Matrix a = symmetrized(a_in);
  check_indices(sel, a.rows());
  if (rank && *rank < 1) throw ArgumentError("standard_nystrom: rank must be >= 1");

  NystromApproximation out;
  out.variant = rank ? NystromVariant::standard_rank_k : NystromVariant::standard;
  out.col_indices = sel.indices;
  out.c = selected_columns(a, sel);
  Matrix w = select_rows(out.c, sel.indices);
  if (sel.scaling) w = scale_rows(*sel.scaling, w);

  const PseudoInverse p = symmetric_pinv(w, rank);
  out.u = multiply_nt(scale_columns(p.vectors, p.inv_values), p.vectors);
  Matrix f = multiply(out.c, p.vectors);
  out.factors = {f, Matrix::diagonal(p.inv_values), f};
  return out;
}

NystromApproximation ensemble_nystrom(const Matrix& a_in, const std::vector<Selection>& samples,
                                      std::optional<std::vector<double>> weights) {
  const Index t = samples.size();
  if (t == 0) throw ArgumentError("ensemble_nystrom: no samples");
  std::vector<double> mu = weights ? *weights : std::vector<double>(t, 1.0 / static_cast<double>(t));
  if (mu.size() != t) {
    throw ArgumentError("ensemble_nystrom: " + std::to_string(mu.size()) + " weights for " + std::to_string(t) +
                        " samples");
  }
  for (double w : mu) {
    if (!(w >= 0.0)) throw ArgumentError("ensemble_nystrom: weights must be non-negative");
  }
  if (std::abs(std::accumulate(mu.begin(), mu.end(), 0.0) - 1.0) > kWeightTol) {
    throw ArgumentError("ensemble_nystrom: weights must sum to 1");
  }
  const Index c = samples.front().size();
  for (const auto& s : samples) {
    if (s.size() != c) throw ArgumentError("ensemble_nystrom: samples differ in size");
  }

  const Matrix a = symmetrized(a_in);
  NystromApproximation out;
  out.variant = NystromVariant::ensemble;
  out.weights = mu;
  out.c = Matrix(a.rows(), 0);
  Matrix left(a.rows(), 0);
  std::vector<Matrix> u_blocks;
  std::vector<double> core_diag;
  for (Index i = 0; i < t; ++i) {
    const NystromApproximation one = standard_nystrom(a, samples[i]);
    out.col_indices.insert(out.col_indices.end(), one.col_indices.begin(), one.col_indices.end());
    out.c = hstack(out.c, one.c);
    u_blocks.push_back(mu[i] * one.u);
    left = hstack(left, one.factors.left);
    for (Index j = 0; j < one.factors.core.rows(); ++j) core_diag.push_back(mu[i] * one.factors.core(j, j));
  }
  out.u = block_diagonal(u_blocks);
  out.factors = {left, Matrix::diagonal(core_diag), left};
  return out;
}

NystromApproximation modified_nystrom(const Matrix& a_in, const Selection& sel) {
  const Matrix a = symmetrized(a_in);
  check_indices(sel, a.rows());
  NystromApproximation out;
  out.variant = NystromVariant::modified;
  out.col_indices = sel.indices;
  out.c = selected_columns(a, sel);
  const Matrix cp = pinv(out.c);
  out.u = multiply_nt(multiply(cp, a), cp);
  // Q (Q^T A Q) Q^T with Q an orthonormal basis of range(C).
  Matrix q = orthonormal_basis(out.c);
  Matrix core = multiply(multiply_tn(q, a), q);
  out.factors = {q, std::move(core), q};
  return out;
}

NystromPlan NystromPlan::from_epsilon(Index k, double epsilon) {
  NystromPlan p;
  p.first = ColSelectParams::from_epsilon(k, epsilon);
  p.extra_columns = ceil_count(static_cast<double>(p.first.total()) / epsilon);
  return p;
}

NystromPlan NystromPlan::from_multiplier(Index k, Index a) {
  if (a < 2) throw ArgumentError("multiplier a must be >= 2");
  const Index c = a * k;
  const double eps = std::sqrt(2.0 * static_cast<double>(k) / static_cast<double>(c));
  const Index c1 = std::max<Index>(k + 2, static_cast<Index>(std::lround(static_cast<double>(c) * eps / (1.0 + eps))));
  if (c1 >= c) throw ArgumentError("multiplier a = " + std::to_string(a) + " leaves no adaptive columns");
  NystromPlan p;
  p.first = ColSelectParams::from_total(k, c1);
  p.extra_columns = c - c1;
  return p;
}

NystromApproximation adaptive_modified_nystrom(const Matrix& a, Index k, double epsilon, std::uint64_t seed) {
  return adaptive_modified_nystrom(a, NystromPlan::from_epsilon(k, epsilon), seed);
}

Selection adaptive_nystrom_selection(const Matrix& a, const NystromPlan& plan, std::uint64_t seed) {
  if (plan.total() >= a.rows()) {
    throw ArgumentError("adaptive Nystrom: c = " + std::to_string(plan.total()) + " must be below m = " +
                        std::to_string(a.rows()));
  }
  if (plan.extra_columns < 1) throw ArgumentError("adaptive Nystrom: need at least one adaptive column");
  ColumnSelection first = near_optimal_select(a, plan.first, derive_seed(seed, 200));
  const Selection second = adaptive_sample(a, first.c, Axis::columns, plan.extra_columns, derive_seed(seed, 201));
  Selection all;
  all.indices = std::move(first.sel.indices);
  all.indices.insert(all.indices.end(), second.indices.begin(), second.indices.end());
  return all;
}

NystromApproximation adaptive_modified_nystrom(const Matrix& a_in, const NystromPlan& plan, std::uint64_t seed) {
  const Matrix a = symmetrized(a_in);
  return modified_nystrom(a, adaptive_nystrom_selection(a, plan, seed));
}

NystromApproximation subspace_nystrom(const Matrix& a_in, Index k, Index c, std::uint64_t seed,
                                      bool with_replacement) {
  const Matrix a = symmetrized(a_in);
  const SamplingDistribution dist = subspace_distribution(a, k, Axis::columns);
  return standard_nystrom(a, draw(dist, c, derive_seed(seed, 300), with_replacement));
}

NystromApproximation uniform_nystrom(const Matrix& a_in, Index c, std::uint64_t seed, bool with_replacement) {
  const Matrix a = symmetrized(a_in);
  return standard_nystrom(a, draw(uniform_distribution(a.rows()), c, derive_seed(seed, 301), with_replacement));
}

}  // namespace adacur
