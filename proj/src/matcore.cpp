#include "adacur/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "adacur/errors.hpp"
#include "adacur/kernels.hpp"

namespace adacur {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

void require_finite(const Matrix& a) {
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw InvalidInput("matrix contains non-finite entries");
  }
}

// One-sided Jacobi on a tall matrix (rows >= cols). On return `cols_t` holds
// the rotated columns of a (as rows, i.e. U * Sigma transposed) and `vt` the
// accumulated right rotations (rows are columns of V).
struct JacobiState {
  Matrix cols_t;
  Matrix vt;
  std::vector<double> sq_norms;
};

JacobiState jacobi_tall(const Matrix& a) {
  const auto& k = kernels::active();
  const Index m = a.rows();
  const Index n = a.cols();
  JacobiState st{transpose(a), Matrix::identity(n), std::vector<double>(n)};
  const double tol = kEps * static_cast<double>(std::max<Index>(m, 1));
  // Columns at roundoff level (duplicates annihilated by earlier rotations)
  // never satisfy the relative test and sit below the rank cutoff anyway.
  const double negligible = kEps * kEps * frobenius_sq(a);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (Index j = 0; j < n; ++j) st.sq_norms[j] = k.sum_sq(st.cols_t.row(j).data(), m);
    bool rotated = false;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double alpha = st.sq_norms[p];
        const double beta = st.sq_norms[q];
        if (alpha <= negligible || beta <= negligible) continue;
        double* gp = st.cols_t.row(p).data();
        double* gq = st.cols_t.row(q).data();
        const double gamma = k.dot(gp, gq, m);
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        k.rotate(gp, gq, m, c, s);
        k.rotate(st.vt.row(p).data(), st.vt.row(q).data(), n, c, s);
        st.sq_norms[p] = alpha - t * gamma;
        st.sq_norms[q] = beta + t * gamma;
      }
    }
    if (!rotated) {
      for (Index j = 0; j < n; ++j) st.sq_norms[j] = k.sum_sq(st.cols_t.row(j).data(), m);
      return st;
    }
  }
  throw InternalFailure("Jacobi SVD did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
}

struct FullSvd {
  TruncatedSvd thin;
  std::vector<double> all_sigma;
};

FullSvd svd_impl(const Matrix& a) {
  if (a.empty()) throw ArgumentError("svd: matrix is empty");
  require_finite(a);
  const bool wide = a.rows() < a.cols();
  Matrix transposed;
  if (wide) transposed = transpose(a);
  const Matrix& src = wide ? transposed : a;

  const Index m = src.rows();
  const Index n = src.cols();
  JacobiState st = jacobi_tall(src);

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<double> sigma(n);
  for (Index j = 0; j < n; ++j) sigma[j] = std::sqrt(std::max(st.sq_norms[j], 0.0));
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return sigma[x] > sigma[y]; });

  FullSvd out;
  out.all_sigma.resize(n);
  for (Index j = 0; j < n; ++j) out.all_sigma[j] = sigma[order[j]];
  const double cutoff = rank_cutoff(out.all_sigma.front(), a.rows(), a.cols());
  Index rank = 0;
  while (rank < n && out.all_sigma[rank] > cutoff) ++rank;

  Matrix u(m, rank);
  Matrix v(n, rank);
  for (Index r = 0; r < rank; ++r) {
    const Index j = order[r];
    const double inv = 1.0 / sigma[j];
    const auto g = st.cols_t.row(j);
    for (Index i = 0; i < m; ++i) u(i, r) = g[i] * inv;
    const auto vr = st.vt.row(j);
    for (Index i = 0; i < n; ++i) v(i, r) = vr[i];
  }
  out.thin.sigma.assign(out.all_sigma.begin(), out.all_sigma.begin() + static_cast<std::ptrdiff_t>(rank));
  out.thin.k_requested = std::min(a.rows(), a.cols());
  if (wide) {
    out.thin.u = std::move(v);
    out.thin.v = std::move(u);
  } else {
    out.thin.u = std::move(u);
    out.thin.v = std::move(v);
  }
  return out;
}

}  // namespace

Matrix LowRankFactors::reconstruct() const { return multiply_nt(multiply(left, core), right); }

Matrix TruncatedSvd::reconstruct() const { return multiply_nt(scale_columns(u, sigma), v); }

double rank_cutoff(double sigma_max, Index rows, Index cols) {
  return sigma_max * static_cast<double>(std::max(rows, cols)) * kEps;
}

TruncatedSvd svd_full(const Matrix& a) { return svd_impl(a).thin; }

std::vector<double> singular_values(const Matrix& a) { return svd_impl(a).all_sigma; }

TruncatedSvd svd_truncated(const Matrix& a, Index k) {
  TruncatedSvd s = svd_full(a);
  const Index keep = std::min(k, s.rank());
  if (keep < s.rank()) {
    std::vector<Index> idx(keep);
    std::iota(idx.begin(), idx.end(), Index{0});
    s.u = select_columns(s.u, idx);
    s.v = select_columns(s.v, idx);
    s.sigma.resize(keep);
  }
  s.k_requested = k;
  return s;
}

Matrix best_rank_k(const Matrix& a, Index k) {
  if (k < 1 || k > std::min(a.rows(), a.cols())) {
    throw ArgumentError("best_rank_k: k=" + std::to_string(k) + " outside [1, " +
                        std::to_string(std::min(a.rows(), a.cols())) + "]");
  }
  return svd_truncated(a, k).reconstruct();
}

double tail_frobenius(const Matrix& a, Index k) {
  const auto s = singular_values(a);
  double tail = 0.0;
  for (Index i = s.size(); i-- > std::min<Index>(k, s.size());) tail += s[i] * s[i];
  return std::sqrt(tail);
}

Matrix pinv(const Matrix& a) {
  const TruncatedSvd s = svd_full(a);
  std::vector<double> inv(s.rank());
  for (Index i = 0; i < s.rank(); ++i) inv[i] = 1.0 / s.sigma[i];
  return multiply_nt(scale_columns(s.v, inv), s.u);
}

Matrix orthonormal_basis(const Matrix& a) { return svd_full(a).u; }

Matrix project_onto_columns(const Matrix& c, const Matrix& a) {
  if (c.rows() != a.rows()) {
    throw ArgumentError("project_onto_columns: c has " + std::to_string(c.rows()) + " rows, a has " +
                        std::to_string(a.rows()));
  }
  const Matrix q = orthonormal_basis(c);
  return multiply(q, multiply_tn(q, a));
}

Matrix project_onto_rows(const Matrix& a, const Matrix& r) {
  if (r.cols() != a.cols()) {
    throw ArgumentError("project_onto_rows: r has " + std::to_string(r.cols()) + " columns, a has " +
                        std::to_string(a.cols()));
  }
  const Matrix q = svd_full(r).v;
  return multiply_nt(multiply(a, q), q);
}

LeverageScores leverage_scores(const Matrix& a, Index k, Axis axis) {
  if (k < 1) throw ArgumentError("leverage_scores: k must be >= 1");
  const TruncatedSvd s = svd_full(a);
  if (k > s.rank()) {
    throw ArgumentError("leverage_scores: k=" + std::to_string(k) + " exceeds numerical rank " +
                        std::to_string(s.rank()));
  }
  const Matrix& basis = axis == Axis::columns ? s.v : s.u;
  LeverageScores out{std::vector<double>(basis.rows(), 0.0), k};
  for (Index i = 0; i < basis.rows(); ++i) {
    double acc = 0.0;
    for (Index j = 0; j < k; ++j) acc += basis(i, j) * basis(i, j);
    out.scores[i] = acc;
  }
  return out;
}

NormTriple norms(const Matrix& a) {
  NormTriple n;
  n.frobenius = frobenius(a);
  if (a.empty()) return n;
  const auto s = singular_values(a);
  n.spectral = s.front();
  n.nuclear = std::accumulate(s.begin(), s.end(), 0.0);
  return n;
}

SymmetricEigen symmetric_eigen(const Matrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("symmetric_eigen: matrix is not square");
  require_finite(a);
  const auto& k = kernels::active();
  const Index n = a.rows();
  Matrix w = a;
  // Work on the exactly symmetric part.
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) w(i, j) = w(j, i) = 0.5 * (w(i, j) + w(j, i));
  Matrix vt = Matrix::identity(n);
  const double scale_sq = frobenius_sq(w);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) off += w(i, j) * w(i, j);
    if (off <= kEps * kEps * scale_sq) break;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (apq == 0.0) continue;
        const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        k.rotate(w.row(p).data(), w.row(q).data(), n, c, s);
        for (Index i = 0; i < n; ++i) {
          const double wp = w(i, p);
          const double wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        w(p, q) = w(q, p) = 0.0;
        k.rotate(vt.row(p).data(), vt.row(q).data(), n, c, s);
      }
    }
    if (sweep + 1 == kMaxSweeps) throw InternalFailure("symmetric_eigen did not converge");
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return w(x, x) > w(y, y); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (Index r = 0; r < n; ++r) {
    out.values[r] = w(order[r], order[r]);
    const auto v = vt.row(order[r]);
    for (Index i = 0; i < n; ++i) out.vectors(i, r) = v[i];
  }
  return out;
}

}  // namespace adacur
