#include "gribov/spectra.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "gribov/error.hpp"
#include "gribov/polyrec.hpp"

namespace gribov {
namespace {

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

bool spectrum_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Schur form T = Z^H A Z of an upper Hessenberg matrix by single-shift
// complex QR with Givens rotations.
struct Schur {
  DenseMatrix t;
  DenseMatrix z;
  int iterations = 0;
};

struct Rotation {
  double c;
  Complex s;
};

// [c s; -conj(s) c] [a; b] = [r; 0]
Rotation make_rotation(Complex a, Complex b) {
  if (b == Complex(0.0, 0.0)) return {1.0, Complex(0.0, 0.0)};
  if (a == Complex(0.0, 0.0)) return {0.0, std::conj(b) / std::abs(b)};
  const double na = std::abs(a);
  const double rho = std::hypot(na, std::abs(b));
  return {na / rho, (a / na) * std::conj(b) / rho};
}

Schur hessenberg_schur(DenseMatrix a, int max_sweeps_per_eigenvalue) {
  const int n = a.rows();
  Schur out{std::move(a), DenseMatrix(n, n), 0};
  DenseMatrix& t = out.t;
  DenseMatrix& z = out.z;
  for (int i = 0; i < n; ++i) z(i, i) = 1.0;

  double tnorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tnorm = std::max(tnorm, abs1(t(i, j)));
  if (tnorm == 0.0) return out;

  int ihi = n - 1;
  while (ihi >= 0) {
    int its = 0;
    for (;;) {
      int l = ihi;
      while (l > 0) {
        double s = abs1(t(l - 1, l - 1)) + abs1(t(l, l));
        if (s == 0.0) s = tnorm;
        if (abs1(t(l, l - 1)) <= DBL_EPSILON * s) {
          t(l, l - 1) = 0.0;
          break;
        }
        --l;
      }
      if (l == ihi) {
        --ihi;
        break;
      }
      if (its >= max_sweeps_per_eigenvalue) {
        throw NoConvergence(out.iterations, "shifted QR did not deflate eigenvalue " +
                                                std::to_string(ihi + 1));
      }
      ++its;
      ++out.iterations;

      Complex shift;
      if (its % 10 == 0) {
        // exceptional shift
        shift = t(ihi, ihi) + 0.75 * abs1(t(ihi, ihi - 1));
      } else {
        const Complex a11 = t(ihi - 1, ihi - 1);
        const Complex a12 = t(ihi - 1, ihi);
        const Complex a21 = t(ihi, ihi - 1);
        const Complex a22 = t(ihi, ihi);
        const Complex half = 0.5 * (a11 - a22);
        const Complex root = std::sqrt(half * half + a12 * a21);
        const Complex den = abs1(half + root) >= abs1(half - root) ? half + root : half - root;
        shift = den == Complex(0.0, 0.0) ? a22 : a22 - a12 * a21 / den;
      }

      Complex x = t(l, l) - shift;
      Complex y = t(l + 1, l);
      for (int k = l; k < ihi; ++k) {
        if (k > l) {
          x = t(k, k - 1);
          y = t(k + 1, k - 1);
        }
        const Rotation g = make_rotation(x, y);
        for (int j = (k > l ? k - 1 : l); j < n; ++j) {
          const Complex t1 = t(k, j);
          const Complex t2 = t(k + 1, j);
          t(k, j) = g.c * t1 + g.s * t2;
          t(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
        }
        if (k > l) t(k + 1, k - 1) = 0.0;
        const int last = std::min(k + 2, ihi);
        for (int i = 0; i <= last; ++i) {
          const Complex t1 = t(i, k);
          const Complex t2 = t(i, k + 1);
          t(i, k) = g.c * t1 + std::conj(g.s) * t2;
          t(i, k + 1) = -g.s * t1 + g.c * t2;
        }
        for (int i = 0; i < n; ++i) {
          const Complex z1 = z(i, k);
          const Complex z2 = z(i, k + 1);
          z(i, k) = g.c * z1 + std::conj(g.s) * z2;
          z(i, k + 1) = -g.s * z1 + g.c * z2;
        }
      }
    }
  }
  return out;
}

// Eigenvectors of the triangular factor by back substitution, mapped back
// through the Schur vectors and normalized.
std::vector<std::vector<Complex>> schur_eigenvectors(const Schur& s) {
  const int n = s.t.rows();
  double tnorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) tnorm = std::max(tnorm, abs1(s.t(i, j)));
  const double small = std::max(tnorm, 1.0) * DBL_EPSILON;

  std::vector<std::vector<Complex>> vecs(static_cast<std::size_t>(n));
  std::vector<Complex> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::fill(x.begin(), x.end(), Complex(0.0, 0.0));
    x[static_cast<std::size_t>(k)] = 1.0;
    const Complex lam = s.t(k, k);
    for (int i = k - 1; i >= 0; --i) {
      Complex acc(0.0, 0.0);
      for (int j = i + 1; j <= k; ++j) acc += s.t(i, j) * x[static_cast<std::size_t>(j)];
      Complex d = s.t(i, i) - lam;
      if (abs1(d) < small) d = small;
      x[static_cast<std::size_t>(i)] = -acc / d;
      const double big = abs1(x[static_cast<std::size_t>(i)]);
      if (big > 1e100) {
        for (int j = i; j <= k; ++j) x[static_cast<std::size_t>(j)] /= big;
      }
    }
    std::vector<Complex> v(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    for (int r = 0; r < n; ++r) {
      Complex acc(0.0, 0.0);
      for (int j = 0; j <= k; ++j) acc += s.z(r, j) * x[static_cast<std::size_t>(j)];
      v[static_cast<std::size_t>(r)] = acc;
    }
    const double nrm = norm2<double>(v);
    for (Complex& c : v) c /= nrm;
    vecs[static_cast<std::size_t>(k)] = std::move(v);
  }
  return vecs;
}

// One step of inverse iteration on the tridiagonal (m - z I), factored by
// LU with partial pivoting (the zgttrf/zgttrs scheme).
std::vector<Complex> inverse_iteration_step(const TridiagonalMatrix& m, Complex z,
                                            const std::vector<Complex>& v) {
  const std::size_t n = static_cast<std::size_t>(m.size());
  if (n == 1) return v;
  std::vector<Complex> d(n);
  std::vector<Complex> dl(m.offdiag());
  std::vector<Complex> du(m.offdiag());
  std::vector<Complex> du2(n, Complex(0.0, 0.0));
  std::vector<char> swapped(n, 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = m.diag()[i] - z;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (abs1(d[i]) >= abs1(dl[i])) {
      if (d[i] == Complex(0.0, 0.0)) continue;
      const Complex f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      const Complex f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const Complex tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  const double tiny = DBL_EPSILON * std::max(m.norm(), 1.0);
  for (Complex& x : d) {
    if (abs1(x) < tiny) x = tiny;
  }
  std::vector<Complex> b = v;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped[i]) {
      b[i + 1] -= dl[i] * b[i];
    } else {
      const Complex tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - dl[i] * b[i];
    }
  }
  b[n - 1] /= d[n - 1];
  b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;) {
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
  const double nrm = norm2<double>(b);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) return v;
  for (Complex& c : b) c /= nrm;
  return b;
}

struct DenseResult {
  std::vector<EigenPair> pairs;
  int iterations = 0;
};

DenseResult dense_solve(const TridiagonalMatrix& m, const SolverOptions& opts) {
  const int n = m.size();
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "matrix must be non-empty");
  if (n > kMaxDenseSize) {
    throw Error(ErrorKind::SizeExceeded, "dense oracle limited to n <= 512");
  }
  const Schur s = hessenberg_schur(m.to_dense(), std::max(30, opts.max_iter / 10));
  const auto vecs = schur_eigenvectors(s);
  DenseResult out;
  out.iterations = s.iterations;
  const double bound = 1e-10 * std::max(m.norm(), 1.0);
  for (int k = 0; k < n; ++k) {
    EigenPair p;
    p.value = s.t(k, k);
    p.vector = vecs[static_cast<std::size_t>(k)];
    p.residual = eigen_residual(m, p.value, p.vector);
    for (int refine = 0; refine < 3 && !(p.residual <= 1e-3 * bound); ++refine) {
      auto v = inverse_iteration_step(m, p.value, p.vector);
      const double r = eigen_residual(m, p.value, v);
      if (!(r < p.residual)) break;
      p.vector = std::move(v);
      p.residual = r;
    }
    out.pairs.push_back(std::move(p));
  }
  std::stable_sort(out.pairs.begin(), out.pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) {
                     return spectrum_less(a.value, b.value);
                   });
  return out;
}

// Search region for the Aberth start: the localization rectangle for Gribov
// families, a Gershgorin rectangle otherwise.
struct StartRegion {
  Complex center;
  double re_half;
  double im_half;
};

StartRegion start_region(const CoefficientFamily& family, const CharPolyEvaluator& ev) {
  const int n = ev.degree();
  Complex center = std::accumulate(ev.beta().begin(), ev.beta().end(), Complex(0.0, 0.0)) /
                   static_cast<double>(n);
  double re_half = 0.0;
  double im_half = 0.0;
  if (const GribovParams* p = family.gribov_params()) {
    const BoundBox box = localization_box(*p, n);
    re_half = 0.9 * box.re_max;
    im_half = 0.9 * box.im_max;
  } else {
    for (int k = 0; k < n; ++k) {
      double radius = 0.0;
      if (k > 0) radius += std::sqrt(std::abs(ev.alpha_squared()[static_cast<std::size_t>(k - 1)]));
      if (k + 1 < n) radius += std::sqrt(std::abs(ev.alpha_squared()[static_cast<std::size_t>(k)]));
      const Complex b = ev.beta()[static_cast<std::size_t>(k)];
      re_half = std::max(re_half, std::abs(b.real() - center.real()) + radius);
      im_half = std::max(im_half, std::abs(b.imag() - center.imag()) + radius);
    }
  }
  const double floor = 0.05 * (1.0 + std::abs(center) + re_half + im_half);
  return {center, std::max(re_half, floor), std::max(im_half, floor)};
}

}  // namespace

std::string_view to_string(SpectrumMethod m) noexcept {
  return m == SpectrumMethod::Aberth ? "aberth" : "dense";
}

void sort_spectrum_order(std::vector<Complex>& values) {
  std::stable_sort(values.begin(), values.end(), spectrum_less);
}

BoundBox localization_box(const GribovParams& params, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n must be >= 1");
  BoundBox box;
  box.delta_n = gribov_delta(n);
  box.re_max = 2.0 * std::abs(params.lambda2()) * box.delta_n + n * std::abs(params.mu1());
  box.im_max = 2.0 * std::abs(params.lambda1()) * box.delta_n + n * std::abs(params.mu2());
  return box;
}

Spectrum zeros_aberth(const CoefficientFamily& family, int n, const SolverOptions& opts) {
  const CharPolyEvaluator ev(family, n);
  const StartRegion region = start_region(family, ev);

  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  const double step = 2.0 * std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    const double theta = step * j + 0.4 + 0.05 * step * jitter(rng);
    const double r = 1.0 + 0.02 * jitter(rng);
    z[static_cast<std::size_t>(j)] =
        region.center + Complex(r * region.re_half * std::cos(theta), r * region.im_half * std::sin(theta));
  }

  std::vector<double> residual(static_cast<std::size_t>(n), 1.0);
  std::vector<double> best(static_cast<std::size_t>(n), INFINITY);
  std::vector<int> stalled(static_cast<std::size_t>(n), 0);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  int iter = 0;
  int remaining = n;
  while (remaining > 0) {
    if (iter >= opts.max_iter) {
      throw NoConvergence(iter, "Aberth iteration: " + std::to_string(remaining) +
                                    " roots unconverged after " + std::to_string(iter) +
                                    " iterations");
    }
    ++iter;
    for (int k = 0; k < n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      if (done[uk]) continue;
      const CharPolyValue pv = ev(z[uk], true);
      if (pv.value.is_zero()) {
        residual[uk] = 0.0;
        done[uk] = 1;
        --remaining;
        continue;
      }
      Complex w;
      if (pv.derivative->is_zero()) {
        // stationary point: nudge off it
        w = Complex(1e-3, 1e-3) * (1.0 + std::abs(z[uk]));
      } else {
        const Complex ratio = quotient(pv.value, *pv.derivative);
        Complex repulsion(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
          if (j != k) repulsion += 1.0 / (z[uk] - z[static_cast<std::size_t>(j)]);
        }
        const Complex den = 1.0 - ratio * repulsion;
        w = den == Complex(0.0, 0.0) ? ratio : ratio / den;
      }
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        w = Complex(1e-3, 1e-3) * (1.0 + std::abs(z[uk]));
      }
      z[uk] -= w;
      residual[uk] = std::abs(w) / (1.0 + std::abs(z[uk]));
      if (residual[uk] < 0.5 * best[uk]) {
        best[uk] = residual[uk];
        stalled[uk] = 0;
      } else {
        ++stalled[uk];
      }
      if (residual[uk] <= opts.tol || (best[uk] <= opts.stall_tol && stalled[uk] >= 5)) {
        done[uk] = 1;
        --remaining;
      }
    }
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return spectrum_less(z[a], z[b]); });
  Spectrum out;
  out.n = n;
  out.family = family;
  out.method = SpectrumMethod::Aberth;
  out.iterations = iter;
  for (std::size_t i : order) {
    out.values.push_back(z[i]);
    out.residuals.push_back(residual[i]);
  }
  return out;
}

std::vector<EigenPair> dense_eigenpairs(const TridiagonalMatrix& m, const SolverOptions& opts) {
  return dense_solve(m, opts).pairs;
}

Spectrum eigen_dense(const TridiagonalMatrix& m, const SolverOptions& opts) {
  DenseResult r = dense_solve(m, opts);
  Spectrum out;
  out.n = m.size();
  out.method = SpectrumMethod::DenseOracle;
  out.iterations = r.iterations;
  for (const EigenPair& p : r.pairs) {
    out.values.push_back(p.value);
    out.residuals.push_back(p.residual);
  }
  return out;
}

Spectrum eigen_dense(const CoefficientFamily& family, int n, const SolverOptions& opts) {
  Spectrum out = eigen_dense(build_matrix(family, n), opts);
  out.family = family;
  return out;
}

LocalizationReport verify_localization(const Spectrum& spectrum, const BoundBox& box,
                                       double slack) {
  LocalizationReport report;
  for (const Complex& z : spectrum.values) {
    LocalizationEntry e{z, std::abs(z.real()) <= box.re_max + slack,
                        std::abs(z.imag()) <= box.im_max + slack};
    report.all_pass = report.all_pass && e.re_ok && e.im_ok;
    report.entries.push_back(e);
  }
  return report;
}

double cross_check(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::ShapeMismatch, "spectra have different sizes");
  }
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<Complex> sa = a;
  sort_spectrum_order(sa);
  // greedy: each a (in sorted order) takes its nearest unused b
  std::vector<std::size_t> match(n);
  std::vector<char> used(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = n;
    double bd = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(sa[i] - b[j]);
      if (best == n || d < bd) {
        best = j;
        bd = d;
      }
    }
    used[best] = 1;
    match[i] = best;
  }
  // pairwise swaps that lower the larger of the two distances
  bool improved = true;
  for (int sweep = 0; improved && sweep < 50; ++sweep) {
    improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double now = std::max(std::abs(sa[i] - b[match[i]]), std::abs(sa[j] - b[match[j]]));
        const double swapped =
            std::max(std::abs(sa[i] - b[match[j]]), std::abs(sa[j] - b[match[i]]));
        if (swapped < now) {
          std::swap(match[i], match[j]);
          improved = true;
        }
      }
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(sa[i] - b[match[i]]));
  return worst;
}

double cross_check(const Spectrum& a, const Spectrum& b) {
  if (a.n != b.n) throw Error(ErrorKind::ShapeMismatch, "spectra have different n");
  return cross_check(a.values, b.values);
}

}  // namespace gribov
