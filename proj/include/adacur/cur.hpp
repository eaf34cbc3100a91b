#pragma once

#include <cstdint>
#include <vector>

#include "adacur/colselect.hpp"
#include "adacur/matcore.hpp"
#include "adacur/matrix.hpp"

namespace adacur {

enum class CurMethod { adaptive, subspace, uniform };

struct CurDecomposition {
  std::vector<Index> col_indices;
  std::vector<Index> row_indices;
  Matrix c;  // m x c
  Matrix r;  // r x n
  Matrix u;  // c x r
  CurMethod method = CurMethod::adaptive;
  /// Same approximation as c * u * r, kept in orthogonal/SVD factors.
  LowRankFactors factors;

  Matrix reconstruct() const { return factors.reconstruct(); }
};

/// Budget for the adaptive algorithm: `columns` drives both C and the first
/// row block R1 (r1 = c), then `extra_rows` rows come from the residual.
struct CurPlan {
  ColSelectParams columns;
  Index extra_rows = 0;

  /// c = (2k/eps)(1 + slack) columns, r2 = ceil(c/eps).
  static CurPlan from_epsilon(Index k, double epsilon);
  /// c = a k columns and r = a c rows in total (r2 = r - c).
  static CurPlan from_multiplier(Index k, Index a);

  Index col_count() const { return columns.total(); }
  Index row_count() const { return columns.total() + extra_rows; }
};

/// Throws ArgumentError unless c < n and r < m, naming the smallest (m, n).
CurDecomposition adaptive_cur(const Matrix& a, Index k, double epsilon, std::uint64_t seed);

/// Only c < n and r1 = c < m are required; the residual rows are i.i.d. and
/// may repeat, so r itself can exceed m.
CurDecomposition adaptive_cur(const Matrix& a, const CurPlan& plan, std::uint64_t seed);

/// Leverage-score baseline. Columns by column leverage of A at rank k, rows by
/// row leverage of C at rank min(c, rank C), both without replacement and
/// scaled by 1/sqrt(count p). U = W^+ with W the scaled row block of C.
CurDecomposition subspace_cur(const Matrix& a, Index k, Index c, Index r, std::uint64_t seed);

/// Uniform baseline: c columns and r rows without replacement, U = C^+ A R^+.
CurDecomposition uniform_cur(const Matrix& a, Index c, Index r, std::uint64_t seed);

/// C^+ A R^+, accumulated over column blocks of A.
Matrix intersection_matrix(const Matrix& a, const Matrix& c, const Matrix& r);

/// ||A - approx||_F / ||A - A_k||_F. Throws when ||A - A_k||_F is zero.
double error_ratio(const Matrix& a, const Matrix& approx, Index k);
/// Same ratio with the denominator supplied.
double error_ratio_given_tail(const Matrix& a, const Matrix& approx, double tail);

}  // namespace adacur
