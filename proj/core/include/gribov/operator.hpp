#pragma once

// The truncated Jacobi-Gribov matrix H_n and its structural identities.

#include <complex>
#include <span>
#include <vector>

#include "gribov/coefficients.hpp"
#include "gribov/linalg.hpp"

namespace gribov {

/// Complex symmetric tridiagonal matrix; entry (k, k+1) = entry (k+1, k).
class TridiagonalMatrix {
 public:
  TridiagonalMatrix() = default;
  /// offdiag.size() must be diag.size() - 1 (ShapeMismatch otherwise).
  TridiagonalMatrix(std::vector<Complex> diag, std::vector<Complex> offdiag);

  int size() const noexcept { return static_cast<int>(diag_.size()); }
  const std::vector<Complex>& diag() const noexcept { return diag_; }
  const std::vector<Complex>& offdiag() const noexcept { return offdiag_; }

  /// 1-based entry access, zero outside the band.
  Complex entry(int j, int k) const;

  DenseMatrix to_dense() const;
  std::vector<Complex> apply(std::span<const Complex> x) const;
  /// M^H x.
  std::vector<Complex> apply_adjoint(std::span<const Complex> x) const;
  /// Frobenius norm.
  double norm() const;

 private:
  std::vector<Complex> diag_;
  std::vector<Complex> offdiag_;
};

TridiagonalMatrix build_matrix(const CoefficientFamily& family, int n);

struct RealSymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::vector<Complex> apply(std::span<const Complex> x) const;
};

/// H = h1 + i h2 with h1, h2 real symmetric.
struct HermitianSplit {
  RealSymTridiagonal h1;
  RealSymTridiagonal h2;

  TridiagonalMatrix reconstruct() const;
};

/// Throws ShapeMismatch when m is not the Gribov matrix of params.
HermitianSplit hermitian_split(const TridiagonalMatrix& m, const GribovParams& params);

/// max |conj(M) - M^H| entrywise, i.e. max |M - M^T|.
double j_symmetry_defect(const DenseMatrix& m);
double j_symmetry_defect(const TridiagonalMatrix& m);

struct EigenPair {
  Complex value;
  std::vector<Complex> vector;  // unit Euclidean norm
  double residual = 0.0;        // ||H v - z v||
};

/// ||m v - z v||.
double eigen_residual(const TridiagonalMatrix& m, Complex z, std::span<const Complex> v);

struct RayleighParts {
  double re_part;
  double im_part;
};

/// (<h1 v, v>, <h2 v, v>). Throws NotAnEigenpair when the pair's residual
/// against h1 + i h2 exceeds max_residual or the vector is not unit norm.
RayleighParts rayleigh_parts(const HermitianSplit& split, const EigenPair& pair,
                             double max_residual = 1e-8);

/// Dimension of span{e1, M e1, ..., M^{depth-1} e1}, built by incremental
/// modified Gram-Schmidt; a new direction counts when its orthogonal part
/// exceeds tol times the norm of the vector it came from.
int krylov_rank(const TridiagonalMatrix& m, int depth, double tol = 1e-10);

struct GramDeterminant {
  int order = 0;
  /// Gram determinant of the unit-normalized vectors (in [0, 1] in modulus).
  Complex normalized;
  /// log10 of the product of the squared vector norms; the raw determinant
  /// is normalized * 10^log10_normalization.
  double log10_normalization = 0.0;

  double abs_normalized() const { return std::abs(normalized); }
};

/// Gram determinant of {e1, M e1, ..., M^{order-1} e1, (M^H)^{order-1} e1}.
/// Requires order + 1 <= n (SizeExceeded otherwise).
GramDeterminant gram_determinant(const TridiagonalMatrix& m, int order);

}  // namespace gribov
