#include "adacur/dualset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "adacur/errors.hpp"
#include "adacur/matcore.hpp"

namespace adacur {
namespace {

constexpr double kIdentityTol = 1e-8;
constexpr double kSlack = 1e-12;

void validate(const DualSetInput& in) {
  const Index n = in.v.rows();
  const Index k = in.v.cols();
  if (in.x.cols() != n) {
    throw ArgumentError("dual_set_sparsify: x has " + std::to_string(in.x.cols()) + " columns, v has " +
                        std::to_string(n) + " rows");
  }
  if (!(k < in.r && in.r < n)) {
    throw ArgumentError("dual_set_sparsify: need k < r < n, got k=" + std::to_string(k) +
                        " r=" + std::to_string(in.r) + " n=" + std::to_string(n));
  }
  const Matrix gram = multiply_tn(in.v, in.v);
  if (frobenius(gram - Matrix::identity(k)) > kIdentityTol) {
    throw ArgumentError("dual_set_sparsify: v is not a decomposition of the identity");
  }
}

}  // namespace

Index WeightVector::nonzero_count() const {
  return static_cast<Index>(std::count_if(s.begin(), s.end(), [](double w) { return w > 0.0; }));
}

std::vector<Index> WeightVector::support() const {
  std::vector<Index> idx;
  for (Index i = 0; i < s.size(); ++i)
    if (s[i] > 0.0) idx.push_back(i);
  return idx;
}

WeightVector dual_set_sparsify(const DualSetInput& input) {
  validate(input);
  const Index n = input.v.rows();
  const Index k = input.v.cols();
  const Index r = input.r;
  const double rk_root = std::sqrt(static_cast<double>(r) * static_cast<double>(k));
  const double shrink = 1.0 - std::sqrt(static_cast<double>(k) / static_cast<double>(r));

  const std::vector<double> x_sq = col_sq_norms(input.x);
  const double delta_u = std::accumulate(x_sq.begin(), x_sq.end(), 0.0) / shrink;

  std::vector<double> s(n, 0.0);
  Matrix acc(k, k);
  std::vector<double> inv1(k);
  std::vector<double> inv2(k);

  for (Index tau = 0; tau < r; ++tau) {
    const double lower_barrier = static_cast<double>(tau) - rk_root;
    const double shifted = lower_barrier + 1.0;
    const SymmetricEigen eig = symmetric_eigen(acc);

    double phi_lower = 0.0;
    double phi_shifted = 0.0;
    for (Index i = 0; i < k; ++i) {
      const double gap = eig.values[i] - shifted;
      if (gap <= 0.0) {
        throw InternalFailure("dual_set_sparsify: eigenvalue " + std::to_string(eig.values[i]) +
                              " fell below barrier " + std::to_string(shifted) + " at iteration " +
                              std::to_string(tau));
      }
      inv1[i] = 1.0 / gap;
      inv2[i] = inv1[i] * inv1[i];
      phi_lower += 1.0 / (eig.values[i] - lower_barrier);
      phi_shifted += inv1[i];
    }
    const double phi_gap = phi_shifted - phi_lower;

    // Row j of vw is (W^T v_j)^T.
    const Matrix vw = multiply(input.v, eig.vectors);

    Index chosen = n;
    double weight = 0.0;
    for (Index j = 0; j < n; ++j) {
      double q1 = 0.0;
      double q2 = 0.0;
      const auto z = vw.row(j);
      for (Index i = 0; i < k; ++i) {
        const double z2 = z[i] * z[i];
        q1 += z2 * inv1[i];
        q2 += z2 * inv2[i];
      }
      const double upper = q2 / phi_gap - q1;
      if (!(upper > 0.0)) continue;
      const double lower = delta_u > 0.0 ? x_sq[j] / delta_u : 0.0;
      if (lower > upper * (1.0 + kSlack)) continue;
      chosen = j;
      weight = 1.0 / (0.5 * (lower + upper));
      break;
    }
    if (chosen == n) {
      throw InternalFailure("dual_set_sparsify: no feasible index at iteration " + std::to_string(tau));
    }

    s[chosen] += weight;
    const auto vj = input.v.row(chosen);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b) acc(a, b) += weight * vj[a] * vj[b];
  }

  const double final_scale = shrink / static_cast<double>(r);
  for (double& w : s) w *= final_scale;
  return WeightVector{std::move(s)};
}

}  // namespace adacur
