#include "gribov/polyrec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gribov/error.hpp"

namespace gribov {
namespace {

constexpr int kRescaleHigh = 400;
constexpr int kRescaleLow = -400;

double inf_norm(Complex z) { return std::max(std::abs(z.real()), std::abs(z.imag())); }

// Running recurrence state whose entries share one power-of-two exponent.
template <std::size_t N>
struct SharedScale {
  std::array<Complex, N> v{};
  long exponent = 0;

  void rebalance() {
    double m = 0.0;
    for (const Complex& x : v) m = std::max(m, inf_norm(x));
    if (m == 0.0 || !std::isfinite(m)) return;
    int e = 0;
    std::frexp(m, &e);
    if (e > kRescaleHigh || e < kRescaleLow) {
      for (Complex& x : v) x = Complex(std::ldexp(x.real(), -e), std::ldexp(x.imag(), -e));
      exponent += e;
    }
  }

  ScaledPolyValue get(std::size_t i) const { return ScaledPolyValue(v[i], exponent); }
};

}  // namespace

ScaledPolyValue::ScaledPolyValue(Complex mantissa, long exponent)
    : mantissa_(mantissa), exponent_(exponent) {
  if (mantissa_ == Complex(0.0, 0.0)) {
    mantissa_ = Complex(0.0, 0.0);
    exponent_ = 0;
    return;
  }
  // Bring the mantissa into double range first so that abs() cannot overflow.
  const double m = inf_norm(mantissa_);
  int e = 0;
  std::frexp(m, &e);
  mantissa_ = Complex(std::ldexp(mantissa_.real(), -e), std::ldexp(mantissa_.imag(), -e));
  exponent_ += e;
  std::frexp(std::abs(mantissa_), &e);
  mantissa_ = Complex(std::ldexp(mantissa_.real(), -e), std::ldexp(mantissa_.imag(), -e));
  exponent_ += e;
}

Complex ScaledPolyValue::to_complex() const {
  const long e = std::clamp(exponent_, -100000L, 100000L);
  return {std::ldexp(mantissa_.real(), static_cast<int>(e)),
          std::ldexp(mantissa_.imag(), static_cast<int>(e))};
}

double ScaledPolyValue::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log2(std::abs(mantissa_)) + static_cast<double>(exponent_);
}

int ScaledPolyValue::real_sign() const noexcept {
  return (mantissa_.real() > 0.0) - (mantissa_.real() < 0.0);
}

ScaledPolyValue operator*(const ScaledPolyValue& a, const ScaledPolyValue& b) {
  return ScaledPolyValue(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

ScaledPolyValue operator+(const ScaledPolyValue& a, const ScaledPolyValue& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long top = std::max(a.exponent_, b.exponent_);
  auto shifted = [top](const ScaledPolyValue& x) {
    const long d = std::max(x.exponent_ - top, -2000L);
    return Complex(std::ldexp(x.mantissa_.real(), static_cast<int>(d)),
                   std::ldexp(x.mantissa_.imag(), static_cast<int>(d)));
  };
  return ScaledPolyValue(shifted(a) + shifted(b), top);
}

ScaledPolyValue operator-(const ScaledPolyValue& a) {
  ScaledPolyValue out = a;
  out.mantissa_ = -out.mantissa_;
  return out;
}

ScaledPolyValue operator-(const ScaledPolyValue& a, const ScaledPolyValue& b) { return a + (-b); }

double abs_ratio(const ScaledPolyValue& a, const ScaledPolyValue& b) {
  if (a.is_zero()) return 0.0;
  if (b.is_zero()) return std::numeric_limits<double>::infinity();
  const long d = std::clamp(a.exponent() - b.exponent(), -5000L, 5000L);
  return std::ldexp(std::abs(a.mantissa()) / std::abs(b.mantissa()), static_cast<int>(d));
}

Complex quotient(const ScaledPolyValue& a, const ScaledPolyValue& b) {
  if (b.is_zero()) {
    return a.is_zero() ? Complex(0.0, 0.0)
                       : Complex(std::numeric_limits<double>::infinity(), 0.0);
  }
  const Complex q = a.mantissa() / b.mantissa();
  const long d = std::clamp(a.exponent() - b.exponent(), -5000L, 5000L);
  return {std::ldexp(q.real(), static_cast<int>(d)), std::ldexp(q.imag(), static_cast<int>(d))};
}

PolySequence eval_P_sequence(const CoefficientFamily& family, int N, Complex z,
                             bool with_derivative) {
  require_valid(family, N);
  std::vector<Complex> alpha(static_cast<std::size_t>(N));
  std::vector<Complex> beta(static_cast<std::size_t>(N));
  for (int k = 1; k <= N; ++k) {
    const CoefficientPair c = family_coeffs(family, k);
    alpha[static_cast<std::size_t>(k - 1)] = c.alpha;
    beta[static_cast<std::size_t>(k - 1)] = c.beta;
    if (k < N && c.alpha == Complex(0.0, 0.0)) {
      throw Error(ErrorKind::InvalidParameter,
                  "alpha_" + std::to_string(k) + " = 0: P-recurrence cannot divide");
    }
  }

  PolySequence seq{family, z, {}, {}};
  seq.values.reserve(static_cast<std::size_t>(N));
  if (with_derivative) seq.derivs.reserve(static_cast<std::size_t>(N));

  // v = {P_{n-1}, P_n, P'_{n-1}, P'_n}
  SharedScale<4> s;
  s.v = {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
  seq.values.push_back(s.get(1));
  if (with_derivative) seq.derivs.push_back(s.get(3));
  for (int n = 1; n < N; ++n) {
    const Complex an = alpha[static_cast<std::size_t>(n - 1)];
    const Complex am = n > 1 ? alpha[static_cast<std::size_t>(n - 2)] : Complex(0.0, 0.0);
    const Complex shift = z - beta[static_cast<std::size_t>(n - 1)];
    const Complex next = (shift * s.v[1] - am * s.v[0]) / an;
    const Complex dnext = (shift * s.v[3] + s.v[1] - am * s.v[2]) / an;
    s.v = {s.v[1], next, s.v[3], dnext};
    s.rebalance();
    seq.values.push_back(s.get(1));
    if (with_derivative) seq.derivs.push_back(s.get(3));
  }
  return seq;
}

CharPolyEvaluator::CharPolyEvaluator(const CoefficientFamily& family, int n) {
  require_valid(family, n);
  beta_.reserve(static_cast<std::size_t>(n));
  alpha_sq_.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const CoefficientPair c = family_coeffs(family, k);
    beta_.push_back(c.beta);
    if (k < n) alpha_sq_.push_back(c.alpha * c.alpha);
  }
}

CharPolyValue CharPolyEvaluator::evaluate(int m, Complex z, bool with_derivative) const {
  if (m < 0 || m > degree()) throw Error(ErrorKind::InvalidParameter, "degree out of range");
  // v = {Ptilde_{k-2}, Ptilde_{k-1}, D_{k-2}, D_{k-1}}
  SharedScale<4> s;
  s.v = {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
  for (int k = 1; k <= m; ++k) {
    const Complex shift = beta_[static_cast<std::size_t>(k - 1)] - z;
    const Complex a2 = k > 1 ? alpha_sq_[static_cast<std::size_t>(k - 2)] : Complex(0.0, 0.0);
    const Complex next = shift * s.v[1] - a2 * s.v[0];
    Complex dnext{};
    if (with_derivative) dnext = -s.v[1] + shift * s.v[3] - a2 * s.v[2];
    s.v = {s.v[1], next, s.v[3], dnext};
    s.rebalance();
  }
  CharPolyValue out{s.get(1), std::nullopt};
  if (with_derivative) out.derivative = s.get(3);
  return out;
}

std::vector<ScaledPolyValue> CharPolyEvaluator::sequence(Complex z) const {
  std::vector<ScaledPolyValue> out;
  out.reserve(beta_.size() + 1);
  SharedScale<2> s;
  s.v = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
  out.push_back(s.get(1));
  for (int k = 1; k <= degree(); ++k) {
    const Complex shift = beta_[static_cast<std::size_t>(k - 1)] - z;
    const Complex a2 = k > 1 ? alpha_sq_[static_cast<std::size_t>(k - 2)] : Complex(0.0, 0.0);
    s.v = {s.v[1], shift * s.v[1] - a2 * s.v[0]};
    s.rebalance();
    out.push_back(s.get(1));
  }
  return out;
}

CharPolyValue eval_char_poly(const CoefficientFamily& family, int n, Complex z,
                             bool with_derivative) {
  return CharPolyEvaluator(family, n)(z, with_derivative);
}

std::vector<Complex> char_poly_coefficients(const CoefficientFamily& family, int n) {
  if (n > kMaxCoefficientDegree) {
    throw Error(ErrorKind::SizeExceeded, "coefficient expansion limited to n <= 64");
  }
  const CharPolyEvaluator ev(family, n);
  std::vector<Complex> prev{Complex(1.0, 0.0)};  // Ptilde_0
  std::vector<Complex> cur = prev;
  for (int k = 1; k <= n; ++k) {
    const Complex b = ev.beta()[static_cast<std::size_t>(k - 1)];
    std::vector<Complex> next(static_cast<std::size_t>(k + 1), Complex(0.0, 0.0));
    for (std::size_t j = 0; j < cur.size(); ++j) {
      next[j] += b * cur[j];
      next[j + 1] -= cur[j];
    }
    if (k > 1) {
      const Complex a2 = ev.alpha_squared()[static_cast<std::size_t>(k - 2)];
      for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= a2 * prev[j];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double relate_P_to_charpoly(const CoefficientFamily& family, int n, Complex z) {
  require_valid(family, n + 1);
  ScaledPolyValue prod(Complex(1.0, 0.0));
  for (int k = 1; k <= n; ++k) {
    const Complex a = family_coeffs(family, k).alpha;
    if (a == Complex(0.0, 0.0)) {
      throw Error(ErrorKind::InvalidParameter, "alpha_" + std::to_string(k) + " = 0");
    }
    prod = prod * ScaledPolyValue(a);
  }
  const PolySequence seq = eval_P_sequence(family, n + 1, z);
  ScaledPolyValue charpoly = eval_char_poly(family, n, z).value;
  if (n % 2 == 1) charpoly = -charpoly;
  const ScaledPolyValue diff = prod * seq.value(n + 1) - charpoly;
  const ScaledPolyValue denom = ScaledPolyValue(Complex(1.0, 0.0)) +
                                ScaledPolyValue(Complex(std::abs(charpoly.mantissa()), 0.0),
                                                charpoly.exponent());
  return abs_ratio(diff, denom);
}

}  // namespace gribov
