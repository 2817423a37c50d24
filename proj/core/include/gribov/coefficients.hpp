#pragma once

// Recurrence coefficients (alpha_k, beta_k) for the Jacobi-Gribov family and
// the classical families that fit the same three-term recurrence.
//
// All indices are 1-based: beta_k is the k-th diagonal entry and alpha_k the
// entry coupling rows k and k+1.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gribov {

using Complex = std::complex<double>;

struct GribovParams {
  Complex mu;
  Complex lambda;

  double mu1() const noexcept { return mu.real(); }
  double mu2() const noexcept { return mu.imag(); }
  double lambda1() const noexcept { return lambda.real(); }
  double lambda2() const noexcept { return lambda.imag(); }
  bool is_real() const noexcept { return mu2() == 0.0 && lambda2() == 0.0; }
};

struct CoefficientPair {
  int k = 0;
  Complex alpha;  // off-diagonal entry coupling k and k+1
  Complex beta;   // diagonal entry
  double delta = 0.0;  // k * sqrt(k + 1)
};

/// k * sqrt(k + 1); the magnitude scale of the Gribov off-diagonal.
double gribov_delta(int k);

struct LaguerreParams {
  double alpha;
};

struct UltrasphericalParams {
  double lambda;
};

struct JacobiParams {
  double alpha;
  double beta;
};

/// Arbitrary finite coefficient table, entries for k = 1..size().
struct CustomTable {
  std::vector<CoefficientPair> pairs;
};

class CoefficientFamily {
 public:
  using Kind = std::variant<GribovParams, LaguerreParams, UltrasphericalParams,
                            JacobiParams, CustomTable>;

  CoefficientFamily(Kind kind);  // NOLINT(google-explicit-constructor)

  static CoefficientFamily gribov(Complex mu, Complex lambda) {
    return CoefficientFamily{GribovParams{mu, lambda}};
  }
  static CoefficientFamily laguerre(double alpha) {
    return CoefficientFamily{LaguerreParams{alpha}};
  }
  static CoefficientFamily ultraspherical(double lambda) {
    return CoefficientFamily{UltrasphericalParams{lambda}};
  }
  static CoefficientFamily jacobi(double alpha, double beta) {
    return CoefficientFamily{JacobiParams{alpha, beta}};
  }
  /// Table entries are renumbered 1..n in the given order.
  static CoefficientFamily custom(std::vector<CoefficientPair> pairs);

  const Kind& kind() const noexcept { return kind_; }

  /// Non-null only for the Gribov kind.
  const GribovParams* gribov_params() const noexcept {
    return std::get_if<GribovParams>(&kind_);
  }

  /// Largest n such that every index 1..n is valid; nullopt when unbounded.
  std::optional<int> max_valid_index() const { return max_valid_; }

  /// Canonical text form, accepted back by parse_family (custom tables
  /// render as "custom:<size>" and are not parseable).
  std::string to_string() const;

 private:
  Kind kind_;
  std::optional<int> max_valid_;
};

CoefficientPair gribov_coeffs(const GribovParams& params, int k);

/// Throws Error(InvalidParameter) when the family constraint fails at k.
CoefficientPair family_coeffs(const CoefficientFamily& family, int k);

struct IndexValidity {
  int index = 0;
  bool ok = true;
  std::string failed_constraint;  // empty when ok
};

struct ValidityReport {
  std::vector<IndexValidity> entries;  // indices 1..n
  bool valid = true;
  std::optional<int> first_invalid;
  /// valid and every alpha_k (k <= n - 1) nonzero, so the P-recurrence can
  /// divide by alpha_k.
  bool recurrence_valid = true;
};

ValidityReport validate_family(const CoefficientFamily& family, int n);

/// Throws Error(InvalidParameter) unless indices 1..n are all valid.
void require_valid(const CoefficientFamily& family, int n);

/// Parses "<re>", "<im>i" or "<re>+<im>i" / "<re>-<im>i".
Complex parse_complex(std::string_view text);

/// Parses gribov:mu=..,lambda=.. | laguerre:alpha=.. |
/// ultraspherical:lambda=.. | jacobi:alpha=..,beta=..
CoefficientFamily parse_family(std::string_view text);

}  // namespace gribov
