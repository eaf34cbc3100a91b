#pragma once

#include <cstdint>

#include "adacur/matrix.hpp"

namespace adacur::bench {

/// a_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)) over the rows of `points`.
Matrix build_rbf_kernel(const Matrix& points, double sigma);

/// n x d standard normal points.
Matrix random_points(Index n, Index d, std::uint64_t seed);

/// U diag(1/i) V^T with random orthonormal U (m x p) and V (n x p), p = min(m, n).
Matrix decaying_spectrum(Index m, Index n, std::uint64_t seed);

}  // namespace adacur::bench
