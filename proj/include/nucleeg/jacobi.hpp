#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace nucleeg {

struct JacobiOptions {
  // The sweep budget scales with the matrix side; tolerance is relative
  // off-diagonal (resp. column-coupling) mass.
  std::size_t sweeps_per_dim = 100;
  double tolerance = 1e-12;
};

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns follow values
};

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi diagonalization of a symmetric matrix. Converges when the
// off-diagonal mass drops below tolerance * ||A||_F or throws once the
// sweep budget is spent.
inline SymmetricEigen symmetric_eigen(Matrix a, const JacobiOptions& opts = {}) {
  if (a.rows() != a.cols()) throw DataError("symmetric_eigen: matrix not square");
  const std::size_t n = a.rows();
  Matrix q = Matrix::identity(n);
  if (n == 0) return {{}, std::move(q)};

  const double threshold = opts.tolerance * a.frobenius_norm();
  const std::size_t max_sweeps = std::max<std::size_t>(1, opts.sweeps_per_dim * n);
  bool converged = detail::off_diagonal_norm(a) <= threshold;
  for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);  // avoids overflow in theta^2
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apr;
        a(r, r) += t * apr;
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == r) continue;
          const double akp = a(k, p);
          const double akr = a(k, r);
          a(k, p) = akp - s * (akr + tau * akp);
          a(p, k) = a(k, p);
          a(k, r) = akr + s * (akp - tau * akr);
          a(r, k) = a(k, r);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double qkp = q(k, p);
          const double qkr = q(k, r);
          q(k, p) = qkp - s * (qkr + tau * qkp);
          q(k, r) = qkr + s * (qkp - tau * qkr);
        }
      }
    }
    converged = detail::off_diagonal_norm(a) <= threshold;
  }
  if (!converged)
    throw DataError("symmetric_eigen: no convergence within budget of " +
                    std::to_string(max_sweeps) + " sweeps (" +
                    std::to_string(opts.sweeps_per_dim) + " per dimension)");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = q(i, order[j]);
  }
  return out;
}

inline std::vector<double> symmetric_eigenvalues(const Matrix& a,
                                                 const JacobiOptions& opts = {}) {
  return symmetric_eigen(a, opts).values;
}

// One-sided Jacobi: rotates column pairs until they are mutually orthogonal,
// then reads the singular values off as column norms. Works on the transpose
// when the input is wider than tall. No squaring of the input, so small
// singular values keep their accuracy.
inline std::vector<double> singular_values_of(const Matrix& m,
                                              const JacobiOptions& opts = {}) {
  Matrix w = m.rows() >= m.cols() ? m : m.transposed();
  const std::size_t rows = w.rows();
  const std::size_t cols = w.cols();
  if (cols == 0) return {};

  auto column_dot = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 0; k < rows; ++k) s += w(k, i) * w(k, j);
    return s;
  };

  const std::size_t max_sweeps = std::max<std::size_t>(1, opts.sweeps_per_dim * cols);
  bool converged = false;
  for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i + 1 < cols; ++i) {
      for (std::size_t j = i + 1; j < cols; ++j) {
        const double alpha = column_dot(i, i);
        const double beta = column_dot(j, j);
        const double gamma = column_dot(i, j);
        if (std::abs(gamma) <= opts.tolerance * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        double t;
        if (std::abs(zeta) > 1e150) {
          t = 1.0 / (2.0 * zeta);
        } else {
          t = 1.0 / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
          if (zeta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const double wi = w(k, i);
          const double wj = w(k, j);
          w(k, i) = c * wi - s * wj;
          w(k, j) = s * wi + c * wj;
        }
      }
    }
  }
  if (!converged)
    throw DataError("singular_values_of: no convergence within budget of " +
                    std::to_string(max_sweeps) + " sweeps (" +
                    std::to_string(opts.sweeps_per_dim) + " per dimension)");

  std::vector<double> sigma(cols);
  for (std::size_t j = 0; j < cols; ++j) sigma[j] = std::sqrt(column_dot(j, j));
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

}  // namespace nucleeg
