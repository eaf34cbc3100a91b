#pragma once

#include <vector>

#include "adacur/matrix.hpp"

namespace adacur {

enum class Axis { rows, columns };

/// Thin SVD factors a ~= u * diag(sigma) * v^T restricted to the numerical
/// rank. `u` is m x rank, `v` is n x rank, sigma is non-increasing.
struct TruncatedSvd {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
  Index k_requested = 0;

  Index rank() const { return sigma.size(); }
  Matrix reconstruct() const;
};

/// Singular values at or below this are treated as zero.
double rank_cutoff(double sigma_max, Index rows, Index cols);

/// Full thin SVD by one-sided (Hestenes) Jacobi rotations. Deterministic for
/// a given input and kernel table.
TruncatedSvd svd_full(const Matrix& a);

/// All singular values, including the ones below the rank cutoff.
std::vector<double> singular_values(const Matrix& a);

/// Leading min(k, rank) triplets.
TruncatedSvd svd_truncated(const Matrix& a, Index k);

Matrix best_rank_k(const Matrix& a, Index k);

/// ||a - a_k||_F evaluated from the singular value tail.
double tail_frobenius(const Matrix& a, Index k);

Matrix pinv(const Matrix& a);

/// Orthonormal basis of range(a), one column per numerically nonzero
/// singular value.
Matrix orthonormal_basis(const Matrix& a);

/// C C^+ A
Matrix project_onto_columns(const Matrix& c, const Matrix& a);
/// A R^+ R
Matrix project_onto_rows(const Matrix& a, const Matrix& r);

struct LeverageScores {
  std::vector<double> scores;
  Index k = 0;
};

/// Squared row norms of V_k (columns axis) or U_k (rows axis).
LeverageScores leverage_scores(const Matrix& a, Index k, Axis axis);

struct NormTriple {
  double frobenius = 0.0;
  double spectral = 0.0;
  double nuclear = 0.0;
};

NormTriple norms(const Matrix& a);

/// Eigen-decomposition of a symmetric matrix: a = vectors * diag(values) *
/// vectors^T, values sorted non-increasing, eigenvectors in columns.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

SymmetricEigen symmetric_eigen(const Matrix& a);

/// Low-rank approximation held as left * core * right^T. CUR and Nystrom
/// results keep one of these next to their C/U/R factors so the dense
/// approximation can be rebuilt without multiplying through an
/// ill-conditioned pseudoinverse.
struct LowRankFactors {
  Matrix left;
  Matrix core;
  Matrix right;

  Matrix reconstruct() const;
};

}  // namespace adacur
