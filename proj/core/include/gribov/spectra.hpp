#pragma once

// Zeros of Ptilde_n (= eigenvalues of H_n, = zeros of P_{n+1}) by two
// independent routes, and the rectangular localization bound for them.

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "gribov/coefficients.hpp"
#include "gribov/operator.hpp"

namespace gribov {

enum class SpectrumMethod { Aberth, DenseOracle };

std::string_view to_string(SpectrumMethod m) noexcept;

struct Spectrum {
  int n = 0;
  std::optional<CoefficientFamily> family;
  std::vector<Complex> values;   // sorted by (Re, Im)
  std::vector<double> residuals; // parallel to values
  SpectrumMethod method = SpectrumMethod::DenseOracle;
  int iterations = 0;
};

struct SolverOptions {
  double tol = 1e-12;
  /// A root whose correction is already below stall_tol but has not halved
  /// for 5 sweeps is accepted at its attainable accuracy.
  double stall_tol = 1e-6;
  int max_iter = 500;
  unsigned seed = 0x5eed;  // deterministic jitter for the Aberth start
};

struct BoundBox {
  double re_max = 0.0;  // 2|lambda2| delta_n + n |mu1|
  double im_max = 0.0;  // 2|lambda1| delta_n + n |mu2|
  double delta_n = 0.0;
};

BoundBox localization_box(const GribovParams& params, int n);

/// Aberth-Ehrlich simultaneous iteration on Ptilde_n, evaluated through the
/// scaled determinant recurrence. Residuals are the last Newton correction
/// |w_k| / (1 + |z_k|).
Spectrum zeros_aberth(const CoefficientFamily& family, int n, const SolverOptions& opts = {});

inline constexpr int kMaxDenseSize = 512;

/// Eigenvalues of the dense copy of m by shifted QR on its Hessenberg form.
/// Residuals are ||m v - z v|| for the computed unit eigenvectors.
Spectrum eigen_dense(const TridiagonalMatrix& m, const SolverOptions& opts = {});
Spectrum eigen_dense(const CoefficientFamily& family, int n, const SolverOptions& opts = {});

/// Eigenpairs in the same (Re, Im) order eigen_dense reports.
std::vector<EigenPair> dense_eigenpairs(const TridiagonalMatrix& m, const SolverOptions& opts = {});

struct LocalizationEntry {
  Complex value;
  bool re_ok = true;
  bool im_ok = true;
};

struct LocalizationReport {
  std::vector<LocalizationEntry> entries;
  bool all_pass = true;
};

LocalizationReport verify_localization(const Spectrum& spectrum, const BoundBox& box,
                                       double slack);

/// Largest distance in a 1-1 matching of the two value lists (greedy
/// nearest-neighbour, then pairwise swaps lowering the bottleneck).
double cross_check(const Spectrum& a, const Spectrum& b);
double cross_check(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Sorts by (Re, Im), the ordering used by every Spectrum.
void sort_spectrum_order(std::vector<Complex>& values);

}  // namespace gribov
