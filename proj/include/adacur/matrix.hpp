#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace adacur {

using Index = std::size_t;

/// Dense row-major matrix of doubles.
///
/// Constructors that accept caller data reject NaN/Inf. Zero-sized shapes are
/// representable (a rank-0 factor is m x 0); operations that need a
/// non-empty operand check for it themselves.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Index rows, Index cols);  // zero-filled
  Matrix(Index rows, Index cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(Index n);
  static Matrix diagonal(std::span<const double> d);
  /// Column vector (n x 1).
  static Matrix column(std::span<const double> v);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  double operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

  std::span<double> row(Index i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(Index i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  std::vector<double> col(Index j) const;

  bool operator==(const Matrix& other) const = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);

/// a * b
Matrix multiply(const Matrix& a, const Matrix& b);
/// a^T * b
Matrix multiply_tn(const Matrix& a, const Matrix& b);
/// a * b^T
Matrix multiply_nt(const Matrix& a, const Matrix& b);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// a * diag(d)
Matrix scale_columns(const Matrix& a, std::span<const double> d);
/// diag(d) * a
Matrix scale_rows(std::span<const double> d, const Matrix& a);

Matrix select_columns(const Matrix& a, std::span<const Index> idx);
Matrix select_rows(const Matrix& a, std::span<const Index> idx);
/// a(rows, cols)
Matrix submatrix(const Matrix& a, std::span<const Index> rows, std::span<const Index> cols);

/// [a, b]
Matrix hstack(const Matrix& a, const Matrix& b);
/// [a; b]
Matrix vstack(const Matrix& a, const Matrix& b);

double frobenius_sq(const Matrix& a);
double frobenius(const Matrix& a);
double trace(const Matrix& a);
double max_abs(const Matrix& a);

std::vector<double> row_sq_norms(const Matrix& a);
std::vector<double> col_sq_norms(const Matrix& a);

/// max |a - a^T| relative to max |a|; zero for exact symmetry.
double asymmetry(const Matrix& a);

}  // namespace adacur
