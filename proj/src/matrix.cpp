#include "adacur/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adacur/errors.hpp"
#include "adacur/kernels.hpp"

namespace adacur {
namespace {

void require_finite(std::span<const double> values) {
  for (Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidInput("matrix entry " + std::to_string(i) + " is not finite");
    }
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  }
}

}  // namespace

Matrix::Matrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(Index rows, Index cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidInput("matrix data length " + std::to_string(data_.size()) + " != " +
                       std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  require_finite(d);
  Matrix m(d.size(), d.size());
  for (Index i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

std::vector<double> Matrix::col(Index j) const {
  std::vector<double> out(rows_);
  for (Index i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  constexpr Index kBlock = 32;
  for (Index ib = 0; ib < a.rows(); ib += kBlock) {
    for (Index jb = 0; jb < a.cols(); jb += kBlock) {
      const Index ie = std::min(ib + kBlock, a.rows());
      const Index je = std::min(jb + kBlock, a.cols());
      for (Index i = ib; i < ie; ++i)
        for (Index j = jb; j < je; ++j) t(j, i) = a(i, j);
    }
  }
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("multiply: inner dimensions differ");
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.cols());
  if (b.cols() == 0) return c;
  for (Index i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i).data();
    for (Index l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail != 0.0) k.axpy(ail, b.row(l).data(), ci, b.cols());
    }
  }
  return c;
}

Matrix multiply_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ArgumentError("multiply_tn: row counts differ");
  const auto& k = kernels::active();
  Matrix c(a.cols(), b.cols());
  if (b.cols() == 0) return c;
  for (Index l = 0; l < a.rows(); ++l) {
    const double* bl = b.row(l).data();
    for (Index i = 0; i < a.cols(); ++i) {
      const double ali = a(l, i);
      if (ali != 0.0) k.axpy(ali, bl, c.row(i).data(), b.cols());
    }
  }
  return c;
}

Matrix multiply_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ArgumentError("multiply_nt: column counts differ");
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i).data();
    for (Index j = 0; j < b.rows(); ++j) c(i, j) = k.dot(ai, b.row(j).data(), a.cols());
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  Matrix c = a;
  kernels::active().axpy(1.0, b.data().data(), c.data().data(), c.size());
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "subtract");
  Matrix c = a;
  kernels::active().axpy(-1.0, b.data().data(), c.data().data(), c.size());
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  kernels::active().scale(s, c.data().data(), c.size());
  return c;
}

Matrix scale_columns(const Matrix& a, std::span<const double> d) {
  if (d.size() != a.cols()) throw ArgumentError("scale_columns: length mismatch");
  Matrix c = a;
  for (Index i = 0; i < c.rows(); ++i)
    for (Index j = 0; j < c.cols(); ++j) c(i, j) *= d[j];
  return c;
}

Matrix scale_rows(std::span<const double> d, const Matrix& a) {
  if (d.size() != a.rows()) throw ArgumentError("scale_rows: length mismatch");
  Matrix c = a;
  const auto& k = kernels::active();
  for (Index i = 0; i < c.rows(); ++i) k.scale(d[i], c.row(i).data(), c.cols());
  return c;
}

Matrix select_columns(const Matrix& a, std::span<const Index> idx) {
  Matrix c(a.rows(), idx.size());
  for (Index j = 0; j < idx.size(); ++j) {
    if (idx[j] >= a.cols()) throw ArgumentError("select_columns: index out of range");
  }
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < idx.size(); ++j) c(i, j) = a(i, idx[j]);
  return c;
}

Matrix select_rows(const Matrix& a, std::span<const Index> idx) {
  Matrix c(idx.size(), a.cols());
  for (Index i = 0; i < idx.size(); ++i) {
    if (idx[i] >= a.rows()) throw ArgumentError("select_rows: index out of range");
    std::copy_n(a.row(idx[i]).data(), a.cols(), c.row(i).data());
  }
  return c;
}

Matrix submatrix(const Matrix& a, std::span<const Index> rows, std::span<const Index> cols) {
  return select_columns(select_rows(a, rows), cols);
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ArgumentError("hstack: row counts differ");
  Matrix c(a.rows(), a.cols() + b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    std::copy_n(a.row(i).data(), a.cols(), c.row(i).data());
    std::copy_n(b.row(i).data(), b.cols(), c.row(i).data() + a.cols());
  }
  return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ArgumentError("vstack: column counts differ");
  Matrix c(a.rows() + b.rows(), a.cols());
  std::copy(a.data().begin(), a.data().end(), c.data().begin());
  std::copy(b.data().begin(), b.data().end(), c.data().begin() + static_cast<std::ptrdiff_t>(a.size()));
  return c;
}

double frobenius_sq(const Matrix& a) { return kernels::active().sum_sq(a.data().data(), a.size()); }

double frobenius(const Matrix& a) { return std::sqrt(frobenius_sq(a)); }

double trace(const Matrix& a) {
  double t = 0.0;
  for (Index i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> row_sq_norms(const Matrix& a) {
  const auto& k = kernels::active();
  std::vector<double> out(a.rows());
  for (Index i = 0; i < a.rows(); ++i) out[i] = k.sum_sq(a.row(i).data(), a.cols());
  return out;
}

std::vector<double> col_sq_norms(const Matrix& a) {
  std::vector<double> out(a.cols(), 0.0);
  for (Index i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (Index j = 0; j < a.cols(); ++j) out[j] += r[j] * r[j];
  }
  return out;
}

double asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("asymmetry: matrix is not square");
  const double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst / scale;
}

}  // namespace adacur
