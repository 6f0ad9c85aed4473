#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"

namespace nucleeg {

// Dense row-major matrix of doubles. Everything in this library is small
// (channel counts up to a few hundred), so plain triple loops are fine.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DataError("matrix product: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw DataError("matrix difference: shapes differ");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw DataError("matrix sum: shapes differ");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }

  bool operator==(const Matrix& other) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// A^T A without forming the transpose. The lower triangle is mirrored from
// the upper one, so the result is symmetric bit for bit.
inline Matrix gram(const Matrix& a) {
  const std::size_t n = a.cols();
  Matrix g(n, n);
  for (std::size_t t = 0; t < a.rows(); ++t) {
    const auto row = a.row(t);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = row[i];
      if (v == 0.0) continue;
      for (std::size_t j = i; j < n; ++j) g(i, j) += v * row[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

// Determinant by LU with partial pivoting; used for the scatter criteria.
inline double determinant(Matrix a) {
  if (a.rows() != a.cols()) throw DataError("determinant: matrix not square");
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

}  // namespace nucleeg
