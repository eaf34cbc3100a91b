#include "adacur/bench/kernel.hpp"

#include <cmath>
#include <random>

#include "adacur/errors.hpp"
#include "adacur/kernels.hpp"
#include "adacur/matcore.hpp"

namespace adacur::bench {

Matrix build_rbf_kernel(const Matrix& points, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ArgumentError("rbf kernel: sigma must be positive");
  const auto& k = kernels::active();
  const Index n = points.rows();
  const Index d = points.cols();
  const double scale = -1.0 / (2.0 * sigma * sigma);
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    a(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      const double v = std::exp(scale * k.sq_dist(points.row(i).data(), points.row(j).data(), d));
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

Matrix random_points(Index n, Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix p(n, d);
  for (double& v : p.data()) v = normal(rng);
  return p;
}

Matrix decaying_spectrum(Index m, Index n, std::uint64_t seed) {
  const Index p = std::min(m, n);
  const Matrix u = orthonormal_basis(random_points(m, p, seed));
  const Matrix v = orthonormal_basis(random_points(n, p, seed ^ 0x5bd1e995ULL));
  std::vector<double> s(p);
  for (Index i = 0; i < p; ++i) s[i] = 1.0 / static_cast<double>(i + 1);
  return multiply_nt(scale_columns(u, s), v);
}

}  // namespace adacur::bench
