#pragma once

// Small dense complex linear algebra used by the structural checks and the
// quadrature module. Row-major, 0-based; sizes here stay in the hundreds.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gribov {

template <typename Real>
class BasicDenseMatrix {
 public:
  using value_type = std::complex<Real>;

  BasicDenseMatrix() = default;
  BasicDenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  value_type& operator()(int i, int j) { return data_[index(i, j)]; }
  const value_type& operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<value_type> row(int i) {
    return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * cols_ + j; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<value_type> data_;
};

using DenseMatrix = BasicDenseMatrix<double>;

/// Hermitian inner product <x, y> = sum x_i conj(y_i).
template <typename Real>
std::complex<Real> inner(std::span<const std::complex<Real>> x,
                         std::span<const std::complex<Real>> y) {
  std::complex<Real> s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

/// Unconjugated bilinear form x^T y.
template <typename Real>
std::complex<Real> bilinear(std::span<const std::complex<Real>> x,
                            std::span<const std::complex<Real>> y) {
  std::complex<Real> s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

template <typename Real>
Real norm2(std::span<const std::complex<Real>> x) {
  Real scale = 0;
  for (const auto& v : x) scale = std::max({scale, std::abs(v.real()), std::abs(v.imag())});
  if (scale == 0) return 0;
  Real s = 0;
  for (const auto& v : x) s += std::norm(v / scale);
  return scale * std::sqrt(s);
}

/// LU factorization with partial pivoting, in place. Returns the permutation
/// sign, or nullopt when a pivot is exactly zero.
template <typename Real>
std::optional<int> lu_factor(BasicDenseMatrix<Real>& a, std::vector<int>& perm) {
  const int n = a.rows();
  perm.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    Real best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    if (best == Real(0)) return std::nullopt;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(p)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      const auto f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return sign;
}

template <typename Real>
std::complex<Real> determinant(BasicDenseMatrix<Real> a) {
  std::vector<int> perm;
  const auto sign = lu_factor(a, perm);
  if (!sign) return {};
  std::complex<Real> d(static_cast<Real>(*sign), 0);
  for (int i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

/// Solves A x = b; returns nullopt if A is singular to working precision
/// (smallest pivot below rel_tol times the largest).
template <typename Real>
std::optional<std::vector<std::complex<Real>>> lu_solve(BasicDenseMatrix<Real> a,
                                                        std::vector<std::complex<Real>> b,
                                                        Real rel_tol) {
  std::vector<int> perm;
  if (!lu_factor(a, perm)) return std::nullopt;
  const int n = a.rows();
  Real pmax = 0;
  Real pmin = std::abs(a(0, 0));
  for (int i = 0; i < n; ++i) {
    pmax = std::max(pmax, std::abs(a(i, i)));
    pmin = std::min(pmin, std::abs(a(i, i)));
  }
  if (pmin <= rel_tol * pmax) return std::nullopt;
  std::vector<std::complex<Real>> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto s = b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    for (int j = 0; j < i; ++j) s -= a(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    auto s = x[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s / a(i, i);
  }
  return x;
}

}  // namespace gribov
