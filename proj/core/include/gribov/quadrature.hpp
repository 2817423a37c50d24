#pragma once

// Finite discrete bilinear measures that orthonormalize P_1..P_N, and the
// monic-transform recurrence check.

#include <complex>
#include <string_view>
#include <vector>

#include "gribov/coefficients.hpp"

namespace gribov {

using LComplex = std::complex<long double>;

enum class MeasureConstruction { EigenvectorSquares, MomentSolve };

std::string_view to_string(MeasureConstruction c) noexcept;
/// "eigvec" / "eigenvector-squares" or "moment" / "moment-solve".
MeasureConstruction parse_construction(std::string_view text);

/// Nodes are the eigenvalues of H_N, weights w_k so that
/// sum_k w_k P_i(z_k) P_j(z_k) = delta_ij for i, j <= N.
struct QuadratureMeasure {
  int N = 0;
  std::vector<LComplex> nodes;
  std::vector<LComplex> weights;
  MeasureConstruction construction = MeasureConstruction::EigenvectorSquares;
};

/// P_1..P_M at z in extended precision. Requires alpha_k != 0 for k < M.
std::vector<LComplex> eval_P_extended(const CoefficientFamily& family, int M, LComplex z);

/// Throws InvalidParameter, SizeExceeded, DegenerateSpectrum,
/// QuasiNullVector or SingularMomentSystem.
QuadratureMeasure discrete_measure(const CoefficientFamily& family, int N,
                                   MeasureConstruction construction =
                                       MeasureConstruction::EigenvectorSquares);

/// max_{i,j <= M} |sum_k w_k P_i(z_k) P_j(z_k) - delta_ij|, unconjugated.
double orthogonality_defect(const QuadratureMeasure& measure, const CoefficientFamily& family,
                            int M);

/// Largest relative residual of
///   alpha_{n-1}^2 PP_{n-1} + beta_n PP_n + PP_{n+1} = z PP_n,
///   PP_n = alpha_1 ... alpha_{n-1} P_n,
/// over 2 <= n <= N - 1 and the given points. 0 when the range is empty.
double monic_transform_check(const CoefficientFamily& family, int N,
                             const std::vector<Complex>& points);

}  // namespace gribov
