#pragma once

// Evaluation of the recurrence polynomials P_n (P_0 = 0, P_1 = 1,
//   alpha_{n-1} P_{n-1} + beta_n P_n + alpha_n P_{n+1} = z P_n)
// and of the characteristic polynomials Ptilde_n(z) = det(H_n - z I).
//
// Values are carried as mantissa * 2^exponent so that degrees in the
// hundreds do not overflow double precision.

#include <complex>
#include <optional>
#include <vector>

#include "gribov/coefficients.hpp"

namespace gribov {

class ScaledPolyValue {
 public:
  ScaledPolyValue() = default;
  ScaledPolyValue(Complex mantissa, long exponent = 0);  // NOLINT

  /// Nonzero mantissas satisfy 0.5 <= |mantissa| < 2.
  Complex mantissa() const noexcept { return mantissa_; }
  long exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == Complex(0.0, 0.0); }

  /// Plain value; overflows to inf / underflows to 0 outside double range.
  Complex to_complex() const;
  /// log2 |value|, -inf for zero.
  double log2_abs() const;
  /// Sign of the real part (-1, 0, +1); useful when the value is real.
  int real_sign() const noexcept;

  friend ScaledPolyValue operator*(const ScaledPolyValue& a, const ScaledPolyValue& b);
  friend ScaledPolyValue operator+(const ScaledPolyValue& a, const ScaledPolyValue& b);
  friend ScaledPolyValue operator-(const ScaledPolyValue& a, const ScaledPolyValue& b);
  friend ScaledPolyValue operator-(const ScaledPolyValue& a);
  friend bool operator==(const ScaledPolyValue& a, const ScaledPolyValue& b) noexcept {
    return a.mantissa_ == b.mantissa_ && (a.is_zero() || a.exponent_ == b.exponent_);
  }

 private:
  Complex mantissa_{0.0, 0.0};
  long exponent_ = 0;
};

/// |a| / |b| as a double (inf when b is zero and a is not, 0 when both are).
double abs_ratio(const ScaledPolyValue& a, const ScaledPolyValue& b);

/// a / b as a plain complex number; the caller guarantees the quotient
/// is representable.
Complex quotient(const ScaledPolyValue& a, const ScaledPolyValue& b);

struct PolySequence {
  CoefficientFamily family;
  Complex z;
  std::vector<ScaledPolyValue> values;  // P_1..P_N
  std::vector<ScaledPolyValue> derivs;  // P'_1..P'_N, empty unless requested

  /// 1-based accessors.
  const ScaledPolyValue& value(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
  const ScaledPolyValue& deriv(int n) const { return derivs.at(static_cast<std::size_t>(n - 1)); }
};

/// Throws InvalidParameter when the family is invalid through N or some
/// alpha_k (k <= N - 1) vanishes.
PolySequence eval_P_sequence(const CoefficientFamily& family, int N, Complex z,
                             bool with_derivative = false);

struct CharPolyValue {
  ScaledPolyValue value;
  std::optional<ScaledPolyValue> derivative;
};

CharPolyValue eval_char_poly(const CoefficientFamily& family, int n, Complex z,
                             bool with_derivative = false);

/// Precomputed beta_k and alpha_k^2 for repeated evaluation of Ptilde_n at
/// many points (root finding, sign sweeps).
class CharPolyEvaluator {
 public:
  CharPolyEvaluator(const CoefficientFamily& family, int n);

  int degree() const noexcept { return static_cast<int>(beta_.size()); }
  const std::vector<Complex>& beta() const noexcept { return beta_; }
  const std::vector<Complex>& alpha_squared() const noexcept { return alpha_sq_; }

  /// Ptilde_m(z) for degree m in [0, degree()].
  CharPolyValue operator()(Complex z, bool with_derivative = false) const {
    return evaluate(degree(), z, with_derivative);
  }
  CharPolyValue evaluate(int m, Complex z, bool with_derivative = false) const;

  /// Ptilde_0..Ptilde_degree() at z (index = degree).
  std::vector<ScaledPolyValue> sequence(Complex z) const;

 private:
  std::vector<Complex> beta_;      // beta_1..beta_n
  std::vector<Complex> alpha_sq_;  // alpha_1^2..alpha_{n-1}^2
};

inline constexpr int kMaxCoefficientDegree = 64;

/// Coefficients c_0..c_n of Ptilde_n(z) = sum c_j z^j; c_n = (-1)^n.
/// Throws SizeExceeded for n > 64.
std::vector<Complex> char_poly_coefficients(const CoefficientFamily& family, int n);

/// |alpha_1...alpha_n P_{n+1}(z) - (-1)^n Ptilde_n(z)| / (1 + |Ptilde_n(z)|).
double relate_P_to_charpoly(const CoefficientFamily& family, int n, Complex z);

}  // namespace gribov
