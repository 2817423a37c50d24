#include "gribov/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gribov/error.hpp"

namespace gribov {

TridiagonalMatrix::TridiagonalMatrix(std::vector<Complex> diag, std::vector<Complex> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.empty() ? !offdiag_.empty() : offdiag_.size() + 1 != diag_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "tridiagonal matrix needs n diagonal and n-1 "
                                          "off-diagonal entries");
  }
}

Complex TridiagonalMatrix::entry(int j, int k) const {
  if (j < 1 || k < 1 || j > size() || k > size()) {
    throw Error(ErrorKind::ShapeMismatch, "matrix index out of range");
  }
  if (j == k) return diag_[static_cast<std::size_t>(j - 1)];
  if (std::abs(j - k) == 1) return offdiag_[static_cast<std::size_t>(std::min(j, k) - 1)];
  return {0.0, 0.0};
}

DenseMatrix TridiagonalMatrix::to_dense() const {
  const int n = size();
  DenseMatrix d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = diag_[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      d(i, i + 1) = offdiag_[static_cast<std::size_t>(i)];
      d(i + 1, i) = offdiag_[static_cast<std::size_t>(i)];
    }
  }
  return d;
}

std::vector<Complex> TridiagonalMatrix::apply(std::span<const Complex> x) const {
  const std::size_t n = diag_.size();
  if (x.size() != n) throw Error(ErrorKind::ShapeMismatch, "vector length mismatch");
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = diag_[i] * x[i];
    if (i > 0) s += offdiag_[i - 1] * x[i - 1];
    if (i + 1 < n) s += offdiag_[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::vector<Complex> TridiagonalMatrix::apply_adjoint(std::span<const Complex> x) const {
  const std::size_t n = diag_.size();
  if (x.size() != n) throw Error(ErrorKind::ShapeMismatch, "vector length mismatch");
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = std::conj(diag_[i]) * x[i];
    if (i > 0) s += std::conj(offdiag_[i - 1]) * x[i - 1];
    if (i + 1 < n) s += std::conj(offdiag_[i]) * x[i + 1];
    y[i] = s;
  }
  return y;
}

double TridiagonalMatrix::norm() const {
  double s = 0.0;
  for (const Complex& d : diag_) s += std::norm(d);
  for (const Complex& o : offdiag_) s += 2.0 * std::norm(o);
  return std::sqrt(s);
}

TridiagonalMatrix build_matrix(const CoefficientFamily& family, int n) {
  require_valid(family, n);
  std::vector<Complex> diag;
  std::vector<Complex> off;
  diag.reserve(static_cast<std::size_t>(n));
  off.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (int k = 1; k <= n; ++k) {
    const CoefficientPair c = family_coeffs(family, k);
    diag.push_back(c.beta);
    if (k < n) off.push_back(c.alpha);
  }
  return {std::move(diag), std::move(off)};
}

std::vector<Complex> RealSymTridiagonal::apply(std::span<const Complex> x) const {
  const std::size_t n = diag.size();
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = diag[i] * x[i];
    if (i > 0) s += offdiag[i - 1] * x[i - 1];
    if (i + 1 < n) s += offdiag[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

TridiagonalMatrix HermitianSplit::reconstruct() const {
  std::vector<Complex> diag(h1.diag.size());
  std::vector<Complex> off(h1.offdiag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = Complex(h1.diag[i], h2.diag[i]);
  for (std::size_t i = 0; i < off.size(); ++i) off[i] = Complex(h1.offdiag[i], h2.offdiag[i]);
  return {std::move(diag), std::move(off)};
}

HermitianSplit hermitian_split(const TridiagonalMatrix& m, const GribovParams& params) {
  const int n = m.size();
  HermitianSplit split;
  split.h1.diag.resize(static_cast<std::size_t>(n));
  split.h2.diag.resize(static_cast<std::size_t>(n));
  split.h1.offdiag.resize(static_cast<std::size_t>(std::max(n - 1, 0)));
  split.h2.offdiag.resize(static_cast<std::size_t>(std::max(n - 1, 0)));

  auto close = [](Complex a, Complex b) { return std::abs(a - b) <= 1e-14 * (1.0 + std::abs(b)); };
  for (int k = 1; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    // B1 e_k = mu1 k e_k, B2 e_k = mu2 k e_k
    split.h1.diag[i] = params.mu1() * k;
    split.h2.diag[i] = params.mu2() * k;
    if (!close(m.diag()[i], Complex(split.h1.diag[i], split.h2.diag[i]))) {
      throw Error(ErrorKind::ShapeMismatch,
                  "diagonal entry " + std::to_string(k) + " does not match mu * k");
    }
    if (k < n) {
      // alpha_k = -lambda2 delta_k + i lambda1 delta_k
      const double delta = gribov_delta(k);
      split.h1.offdiag[i] = -params.lambda2() * delta;
      split.h2.offdiag[i] = params.lambda1() * delta;
      if (!close(m.offdiag()[i], Complex(split.h1.offdiag[i], split.h2.offdiag[i]))) {
        throw Error(ErrorKind::ShapeMismatch,
                    "off-diagonal entry " + std::to_string(k) + " does not match i lambda delta_k");
      }
    }
  }
  return split;
}

double j_symmetry_defect(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix must be square");
  double worst = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      // (J M J)_{ij} = conj(M_{ij}); (M^H)_{ij} = conj(M_{ji})
      worst = std::max(worst, std::abs(std::conj(m(i, j)) - std::conj(m(j, i))));
    }
  }
  return worst;
}

double j_symmetry_defect(const TridiagonalMatrix& m) { return j_symmetry_defect(m.to_dense()); }

double eigen_residual(const TridiagonalMatrix& m, Complex z, std::span<const Complex> v) {
  std::vector<Complex> r = m.apply(v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= z * v[i];
  return norm2<double>(r);
}

RayleighParts rayleigh_parts(const HermitianSplit& split, const EigenPair& pair,
                             double max_residual) {
  const std::span<const Complex> v(pair.vector);
  const double nrm = norm2<double>(v);
  const double residual = eigen_residual(split.reconstruct(), pair.value, v);
  if (std::abs(nrm - 1.0) > 1e-12 || !(residual <= max_residual)) {
    throw Error(ErrorKind::NotAnEigenpair,
                "eigenpair residual " + std::to_string(residual) + " or norm " +
                    std::to_string(nrm) + " outside tolerance");
  }
  const std::vector<Complex> a = split.h1.apply(v);
  const std::vector<Complex> b = split.h2.apply(v);
  return {inner<double>(a, v).real(), inner<double>(b, v).real()};
}

int krylov_rank(const TridiagonalMatrix& m, int depth, double tol) {
  const int n = m.size();
  if (depth < 1 || depth > n) {
    throw Error(ErrorKind::InvalidParameter, "Krylov depth must lie in [1, n]");
  }
  std::vector<std::vector<Complex>> basis;
  std::vector<Complex> q(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  q[0] = 1.0;
  basis.push_back(q);
  while (static_cast<int>(basis.size()) < depth) {
    std::vector<Complex> w = m.apply(basis.back());
    const double base = norm2<double>(w);
    // two MGS passes keep the basis orthogonal to working precision
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const Complex c = inner<double>(w, b);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
      }
    }
    const double rest = norm2<double>(w);
    if (!(rest > tol * base)) break;  // invariant subspace reached
    for (Complex& x : w) x /= rest;
    basis.push_back(std::move(w));
  }
  return static_cast<int>(basis.size());
}

GramDeterminant gram_determinant(const TridiagonalMatrix& m, int order) {
  const int n = m.size();
  if (order < 1) throw Error(ErrorKind::InvalidParameter, "Gram order must be >= 1");
  if (order + 1 > n) {
    throw Error(ErrorKind::SizeExceeded, "Gram order + 1 must not exceed the matrix size");
  }
  std::vector<std::vector<Complex>> vecs;
  std::vector<Complex> v(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  v[0] = 1.0;
  vecs.push_back(v);
  for (int j = 1; j < order; ++j) vecs.push_back(m.apply(vecs.back()));
  std::vector<Complex> w = vecs.front();
  for (int j = 1; j < order; ++j) w = m.apply_adjoint(w);
  vecs.push_back(std::move(w));

  GramDeterminant out;
  out.order = order;
  for (auto& x : vecs) {
    const double nrm = norm2<double>(x);
    out.log10_normalization += 2.0 * std::log10(nrm);
    for (Complex& c : x) c /= nrm;
  }
  const int size = static_cast<int>(vecs.size());
  DenseMatrix g(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      g(i, j) = inner<double>(vecs[static_cast<std::size_t>(j)], vecs[static_cast<std::size_t>(i)]);
    }
  }
  out.normalized = determinant(g);
  return out;
}

}  // namespace gribov
