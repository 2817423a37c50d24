#include "gribov/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <string>

#include "gribov/error.hpp"
#include "gribov/linalg.hpp"
#include "gribov/polyrec.hpp"
#include "gribov/spectra.hpp"

namespace gribov {
namespace {

struct ExtendedCoeffs {
  std::vector<LComplex> alpha;  // alpha_1..alpha_n
  std::vector<LComplex> beta;   // beta_1..beta_n
};

ExtendedCoeffs extended_coeffs(const CoefficientFamily& family, int n) {
  ExtendedCoeffs c;
  c.alpha.reserve(static_cast<std::size_t>(n));
  c.beta.reserve(static_cast<std::size_t>(n));
  const GribovParams* g = family.gribov_params();
  for (int k = 1; k <= n; ++k) {
    if (g) {
      const long double kk = k;
      const long double delta = kk * std::sqrt(kk + 1.0L);
      c.alpha.emplace_back(-static_cast<long double>(g->lambda2()) * delta,
                           static_cast<long double>(g->lambda1()) * delta);
      c.beta.emplace_back(static_cast<long double>(g->mu1()) * kk,
                          static_cast<long double>(g->mu2()) * kk);
    } else {
      const CoefficientPair p = family_coeffs(family, k);
      c.alpha.emplace_back(p.alpha.real(), p.alpha.imag());
      c.beta.emplace_back(p.beta.real(), p.beta.imag());
    }
  }
  return c;
}

void require_nonzero_alpha(const ExtendedCoeffs& c, int upto) {
  for (int k = 1; k <= upto; ++k) {
    if (c.alpha[static_cast<std::size_t>(k - 1)] == LComplex(0, 0)) {
      throw Error(ErrorKind::InvalidParameter,
                  "alpha_" + std::to_string(k) + " vanishes; the recurrence is undefined");
    }
  }
}

std::vector<LComplex> p_values(const ExtendedCoeffs& c, int M, LComplex z) {
  std::vector<LComplex> p(static_cast<std::size_t>(M));
  LComplex prev(0, 0);
  LComplex cur(1, 0);
  for (int n = 1; n <= M; ++n) {
    p[static_cast<std::size_t>(n - 1)] = cur;
    if (n == M) break;
    const LComplex a_prev = n > 1 ? c.alpha[static_cast<std::size_t>(n - 2)] : LComplex(0, 0);
    const LComplex next =
        ((z - c.beta[static_cast<std::size_t>(n - 1)]) * cur - a_prev * prev) /
        c.alpha[static_cast<std::size_t>(n - 1)];
    prev = cur;
    cur = next;
  }
  return p;
}

// Ptilde_n(z) and its derivative.
std::pair<LComplex, LComplex> char_poly_extended(const ExtendedCoeffs& c, int n, LComplex z) {
  LComplex p2(0, 0), p1(1, 0), d2(0, 0), d1(0, 0);
  for (int k = 1; k <= n; ++k) {
    const LComplex b = c.beta[static_cast<std::size_t>(k - 1)] - z;
    const LComplex a2 = k > 1 ? c.alpha[static_cast<std::size_t>(k - 2)] *
                                    c.alpha[static_cast<std::size_t>(k - 2)]
                              : LComplex(0, 0);
    const LComplex p = b * p1 - a2 * p2;
    const LComplex d = -p1 + b * d1 - a2 * d2;
    p2 = p1;
    p1 = p;
    d2 = d1;
    d1 = d;
  }
  return {p1, d1};
}

std::vector<LComplex> polished_nodes(const CoefficientFamily& family, const ExtendedCoeffs& c,
                                     int N) {
  const Spectrum s = eigen_dense(family, N);
  std::vector<LComplex> nodes;
  nodes.reserve(s.values.size());
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const LComplex z0(s.values[k].real(), s.values[k].imag());
    long double sep = std::numeric_limits<long double>::infinity();
    for (std::size_t j = 0; j < s.values.size(); ++j) {
      if (j != k) sep = std::min(sep, static_cast<long double>(std::abs(s.values[j] - s.values[k])));
    }
    const long double reach = std::isfinite(sep) ? 0.25L * sep : 1.0L + std::abs(z0);
    LComplex z = z0;
    for (int it = 0; it < 30; ++it) {
      const auto [p, d] = char_poly_extended(c, N, z);
      if (p == LComplex(0, 0) || d == LComplex(0, 0)) break;
      const LComplex step = p / d;
      z -= step;
      if (!(std::abs(z - z0) <= reach)) {
        z = z0;
        break;
      }
      if (std::abs(step) <= 4 * LDBL_EPSILON * (1.0L + std::abs(z))) break;
    }
    nodes.push_back(z);
  }
  return nodes;
}

}  // namespace

std::string_view to_string(MeasureConstruction c) noexcept {
  return c == MeasureConstruction::EigenvectorSquares ? "eigenvector-squares" : "moment-solve";
}

MeasureConstruction parse_construction(std::string_view text) {
  if (text == "eigvec" || text == "eigenvector-squares") return MeasureConstruction::EigenvectorSquares;
  if (text == "moment" || text == "moment-solve") return MeasureConstruction::MomentSolve;
  throw Error(ErrorKind::InvalidParameter, "unknown measure construction '" + std::string(text) + "'");
}

std::vector<LComplex> eval_P_extended(const CoefficientFamily& family, int M, LComplex z) {
  if (M < 1) throw Error(ErrorKind::InvalidParameter, "degree must be >= 1");
  require_valid(family, M);
  const ExtendedCoeffs c = extended_coeffs(family, M);
  require_nonzero_alpha(c, M - 1);
  return p_values(c, M, z);
}

QuadratureMeasure discrete_measure(const CoefficientFamily& family, int N,
                                   MeasureConstruction construction) {
  if (N < 1) throw Error(ErrorKind::InvalidParameter, "N must be >= 1");
  if (N > kMaxDenseSize) {
    throw Error(ErrorKind::SizeExceeded, "N = " + std::to_string(N) + " exceeds " +
                                             std::to_string(kMaxDenseSize));
  }
  require_valid(family, N);
  const ExtendedCoeffs c = extended_coeffs(family, N);
  require_nonzero_alpha(c, N - 1);

  QuadratureMeasure m;
  m.N = N;
  m.construction = construction;
  m.nodes = polished_nodes(family, c, N);

  std::vector<std::vector<LComplex>> vecs;
  vecs.reserve(m.nodes.size());
  for (const LComplex& z : m.nodes) vecs.push_back(p_values(c, N, z));

  if (construction == MeasureConstruction::EigenvectorSquares) {
    for (std::size_t a = 0; a < m.nodes.size(); ++a) {
      for (std::size_t b = a + 1; b < m.nodes.size(); ++b) {
        const long double d = std::abs(m.nodes[a] - m.nodes[b]);
        if (d <= 1e-8L) {
          throw Error(ErrorKind::DegenerateSpectrum,
                      "nodes " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                          " are " + std::to_string(static_cast<double>(d)) + " apart");
        }
      }
    }
    for (std::size_t k = 0; k < vecs.size(); ++k) {
      LComplex s(0, 0);
      long double nrm = 0;
      for (const LComplex& v : vecs[k]) {
        s += v * v;
        nrm += std::norm(v);
      }
      if (!(std::abs(s) > 1e-8L * nrm)) {
        throw Error(ErrorKind::QuasiNullVector,
                    "eigenvector " + std::to_string(k + 1) + " has |v^T v| / |v|^2 = " +
                        std::to_string(static_cast<double>(std::abs(s) / nrm)));
      }
      m.weights.push_back(LComplex(1, 0) / s);
    }
    return m;
  }

  // Columns are scaled to unit norm, then rows to unit max entry.
  std::vector<long double> col(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    long double s = 0;
    for (const LComplex& v : vecs[static_cast<std::size_t>(k)]) s += std::norm(v);
    col[static_cast<std::size_t>(k)] = std::sqrt(s);
  }
  BasicDenseMatrix<long double> a(N, N);
  std::vector<LComplex> rhs(static_cast<std::size_t>(N), LComplex(0, 0));
  for (int i = 0; i < N; ++i) {
    long double scale = 0;
    for (int k = 0; k < N; ++k) {
      a(i, k) = vecs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] /
                col[static_cast<std::size_t>(k)];
      scale = std::max(scale, std::abs(a(i, k)));
    }
    if (!(scale > 0) || !std::isfinite(scale)) {
      throw Error(ErrorKind::SingularMomentSystem, "moment row " + std::to_string(i + 1) +
                                                       " is zero or not finite");
    }
    for (int k = 0; k < N; ++k) a(i, k) /= scale;
    if (i == 0) rhs[0] = LComplex(1, 0) / scale;
  }
  auto w = lu_solve(std::move(a), std::move(rhs), 64 * LDBL_EPSILON);
  if (!w) throw Error(ErrorKind::SingularMomentSystem, "moment system is numerically singular");
  for (int k = 0; k < N; ++k) {
    LComplex& x = (*w)[static_cast<std::size_t>(k)];
    x /= col[static_cast<std::size_t>(k)];
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw Error(ErrorKind::SingularMomentSystem, "moment solve produced non-finite weights");
    }
  }
  m.weights = *w;
  return m;
}

double orthogonality_defect(const QuadratureMeasure& measure, const CoefficientFamily& family,
                            int M) {
  if (M < 1 || M > measure.N) {
    throw Error(ErrorKind::InvalidParameter,
                "M must lie in [1, " + std::to_string(measure.N) + "]");
  }
  const ExtendedCoeffs c = extended_coeffs(family, M);
  require_nonzero_alpha(c, M - 1);
  std::vector<std::vector<LComplex>> vals;
  vals.reserve(measure.nodes.size());
  for (const LComplex& z : measure.nodes) vals.push_back(p_values(c, M, z));
  long double worst = 0;
  for (int i = 0; i < M; ++i) {
    for (int j = i; j < M; ++j) {
      LComplex g(0, 0);
      for (std::size_t k = 0; k < vals.size(); ++k) {
        g += measure.weights[k] * vals[k][static_cast<std::size_t>(i)] *
             vals[k][static_cast<std::size_t>(j)];
      }
      if (i == j) g -= LComplex(1, 0);
      worst = std::max(worst, std::abs(g));
    }
  }
  return static_cast<double>(worst);
}

double monic_transform_check(const CoefficientFamily& family, int N,
                             const std::vector<Complex>& points) {
  if (N < 1) throw Error(ErrorKind::InvalidParameter, "N must be >= 1");
  require_valid(family, N);
  std::vector<CoefficientPair> pairs;
  for (int k = 1; k <= N; ++k) {
    pairs.push_back(family_coeffs(family, k));
    if (pairs.back().alpha == Complex(0.0, 0.0)) {
      throw Error(ErrorKind::InvalidParameter,
                  "alpha_" + std::to_string(k) + " vanishes; the transform is undefined");
    }
  }
  if (N < 3) return 0.0;
  auto magnitude = [](const ScaledPolyValue& v) {
    return ScaledPolyValue(Complex(std::abs(v.mantissa()), 0.0), v.exponent());
  };
  double worst = 0.0;
  for (const Complex& z : points) {
    const PolySequence seq = eval_P_sequence(family, N, z, false);
    std::vector<ScaledPolyValue> pp;  // PP_1..PP_N
    ScaledPolyValue prod(1.0);
    for (int n = 1; n <= N; ++n) {
      pp.push_back(prod * seq.value(n));
      prod = prod * ScaledPolyValue(pairs[static_cast<std::size_t>(n - 1)].alpha);
    }
    for (int n = 2; n <= N - 1; ++n) {
      const Complex a = pairs[static_cast<std::size_t>(n - 2)].alpha;
      const Complex b = pairs[static_cast<std::size_t>(n - 1)].beta;
      const ScaledPolyValue t1 = ScaledPolyValue(a * a) * pp[static_cast<std::size_t>(n - 2)];
      const ScaledPolyValue t2 = ScaledPolyValue(b) * pp[static_cast<std::size_t>(n - 1)];
      const ScaledPolyValue t3 = pp[static_cast<std::size_t>(n)];
      const ScaledPolyValue t4 = ScaledPolyValue(z) * pp[static_cast<std::size_t>(n - 1)];
      const ScaledPolyValue res = t1 + t2 + t3 - t4;
      const ScaledPolyValue den = magnitude(t1) + magnitude(t2) + magnitude(t3) + magnitude(t4);
      if (den.is_zero()) continue;
      worst = std::max(worst, abs_ratio(res, den));
    }
  }
  return worst;
}

}  // namespace gribov
