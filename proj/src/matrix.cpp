#include "cmseq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmseq/errors.hpp"
#include "cmseq/kernels.hpp"

namespace cmseq {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw_shape("matrix entry count " + std::to_string(data_.size()) + " != " +
                std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw_shape("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw IndexError("block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc,
                b.data_.begin() + static_cast<std::ptrdiff_t>(i * nc));
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw IndexError("set_block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i) {
    std::copy_n(b.data_.begin() + static_cast<std::ptrdiff_t>(i * b.cols_), b.cols_,
                data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0));
  }
}

Matrix Matrix::gather(std::span<const std::size_t> row_idx,
                      std::span<const std::size_t> col_idx) const {
  Matrix g(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    if (row_idx[i] >= rows_) throw IndexError("gather row index out of range");
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      if (col_idx[j] >= cols_) throw IndexError("gather column index out of range");
      g(i, j) = (*this)(row_idx[i], col_idx[j]);
    }
  }
  return g;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::symmetrized() const {
  if (!is_square()) throw_shape("symmetrize requires a square matrix");
  Matrix s(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    s(i, i) = (*this)(i, i);
    for (std::size_t j = 0; j < i; ++j) {
      const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw_shape("matrix addition shape mismatch");
  kernels::axpy(1.0, o.data(), data(), data_.size());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw_shape("matrix subtraction shape mismatch");
  kernels::axpy(-1.0, o.data(), data(), data_.size());
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(kernels::dot(data(), data(), data_.size()));
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::max_diagonal() const {
  double m = 0.0;
  const std::size_t n = std::min(rows_, cols_);
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, (*this)(i, i));
  return m;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw_shape("matrix product " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix c(a.rows(), b.cols());
  kernels::gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw_shape("matrix-vector product shape mismatch");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = kernels::dot(a.row(i).data(), x.data(), x.size());
  return y;
}

double relative_frobenius(const Matrix& a, const Matrix& b) {
  const double diff = (a - b).frobenius_norm();
  const double ref = b.frobenius_norm();
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace cmseq
