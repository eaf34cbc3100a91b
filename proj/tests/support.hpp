#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "adacur/matcore.hpp"
#include "adacur/matrix.hpp"

namespace testsupport {

using adacur::Index;
using adacur::Matrix;

inline Matrix gaussian(Index m, Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(m, n);
  for (double& v : g.data()) v = normal(rng);
  return g;
}

inline Matrix orthonormal(Index m, Index k, std::uint64_t seed) { return adacur::orthonormal_basis(gaussian(m, k, seed)); }

inline Matrix low_rank(Index m, Index n, Index r, std::uint64_t seed) {
  return adacur::multiply(gaussian(m, r, seed), gaussian(r, n, seed + 7919));
}

/// U diag(1/i) V^T with random orthonormal U, V.
inline Matrix decaying(Index m, Index n, std::uint64_t seed) {
  const Index p = std::min(m, n);
  std::vector<double> s(p);
  for (Index i = 0; i < p; ++i) s[i] = 1.0 / static_cast<double>(i + 1);
  return adacur::multiply_nt(adacur::scale_columns(orthonormal(m, p, seed), s), orthonormal(n, p, seed + 1));
}

inline Matrix spsd(Index m, Index r, std::uint64_t seed) {
  const Matrix g = gaussian(m, r, seed);
  return adacur::multiply_nt(g, g);
}

/// (1 - alpha) I + alpha 1 1^T
inline Matrix equicorrelated(Index m, double alpha) {
  Matrix b(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) b(i, j) = i == j ? 1.0 : alpha;
  return b;
}

inline double diff(const Matrix& a, const Matrix& b) { return adacur::frobenius(a - b); }

}  // namespace testsupport
