#include "gribov/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <regex>
#include <sstream>
#include <type_traits>

#include "gribov/error.hpp"

namespace gribov {
namespace {

struct Checked {
  CoefficientPair pair;
  std::string failed;  // empty on success
};

Checked laguerre_at(const LaguerreParams& p, int n) {
  Checked out;
  out.pair.k = n;
  out.pair.delta = gribov_delta(n);
  if (!(p.alpha < -n)) {
    out.failed = "alpha < -n";
    return out;
  }
  out.pair.beta = Complex(2.0 * n + p.alpha - 1.0, 0.0);
  out.pair.alpha = Complex(0.0, std::sqrt(n * (-n - p.alpha)));
  return out;
}

Checked ultraspherical_at(const UltrasphericalParams& p, int n) {
  Checked out;
  out.pair.k = n;
  out.pair.delta = gribov_delta(n);
  const double l = p.lambda;
  if (!(l < -n)) {
    out.failed = "lambda < -n";
    return out;
  }
  const double arg = -n * (2.0 * l + n - 1.0) / ((n + l) * (n + l - 1.0));
  if (!(arg > 0.0)) {
    out.failed = "sqrt argument nonpositive";
    return out;
  }
  out.pair.beta = Complex(0.0, 0.0);
  out.pair.alpha = Complex(0.0, 0.5 * std::sqrt(arg));
  return out;
}

Checked jacobi_at(const JacobiParams& p, int n) {
  Checked out;
  out.pair.k = n;
  out.pair.delta = gribov_delta(n);
  const double a = p.alpha;
  const double b = p.beta;
  if (!(a < -n)) {
    out.failed = "alpha < -n";
    return out;
  }
  if (!(b < -n)) {
    out.failed = "beta < -n";
    return out;
  }
  if (!(a + b < -2.0 * (n + 1))) {
    out.failed = "alpha + beta < -2(n + 1)";
    return out;
  }
  const double s = 2.0 * n + a + b;
  const double num = -4.0 * (n + 1) * (n + a + 1) * (n + b + 1) * (n + a + b + 1);
  const double den = (s + 2.0) * (s + 2.0) * (s + 1.0) * (s + 3.0);
  if (s == 0.0 || den == 0.0 || !(num / den > 0.0)) {
    out.failed = "sqrt argument nonpositive";
    return out;
  }
  out.pair.beta = Complex((b * b - a * a) / ((s + 2.0) * s), 0.0);
  out.pair.alpha = Complex(0.0, std::sqrt(num / den));
  return out;
}

Checked custom_at(const CustomTable& t, int n) {
  Checked out;
  if (n > static_cast<int>(t.pairs.size())) {
    out.pair.k = n;
    out.failed = "index beyond custom table";
    return out;
  }
  out.pair = t.pairs[static_cast<std::size_t>(n - 1)];
  return out;
}

Checked coeffs_at(const CoefficientFamily& family, int k) {
  return std::visit(
      [k](const auto& p) -> Checked {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GribovParams>) {
          return Checked{gribov_coeffs(p, k), {}};
        } else if constexpr (std::is_same_v<T, LaguerreParams>) {
          return laguerre_at(p, k);
        } else if constexpr (std::is_same_v<T, UltrasphericalParams>) {
          return ultraspherical_at(p, k);
        } else if constexpr (std::is_same_v<T, JacobiParams>) {
          return jacobi_at(p, k);
        } else {
          return custom_at(p, k);
        }
      },
      family.kind());
}

// Upper bound on the valid range implied by the strict inequalities alone.
std::optional<int> structural_bound(const CoefficientFamily::Kind& kind) {
  auto below = [](double v) {
    // largest n >= 0 with v < -n
    if (!(v < 0.0)) return 0;
    const double n = std::ceil(-v) - 1.0;
    return static_cast<int>(std::min(n, 1.0e7));
  };
  return std::visit(
      [&](const auto& p) -> std::optional<int> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GribovParams>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, LaguerreParams>) {
          return below(p.alpha);
        } else if constexpr (std::is_same_v<T, UltrasphericalParams>) {
          return below(p.lambda);
        } else if constexpr (std::is_same_v<T, JacobiParams>) {
          return std::min(below(p.alpha), below(p.beta));
        } else {
          return static_cast<int>(p.pairs.size());
        }
      },
      kind);
}

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  out += z.imag() < 0.0 || (z.imag() == 0.0 && std::signbit(z.imag())) ? "-" : "+";
  out += format_real(std::abs(z.imag()));
  out += "i";
  return out;
}

}  // namespace

double gribov_delta(int k) { return k * std::sqrt(static_cast<double>(k) + 1.0); }

CoefficientFamily::CoefficientFamily(Kind kind) : kind_(std::move(kind)) {
  const auto bound = structural_bound(kind_);
  if (!bound) {
    max_valid_ = std::nullopt;
    return;
  }
  int n = 0;
  while (n < *bound && coeffs_at(*this, n + 1).failed.empty()) ++n;
  max_valid_ = n;
}

CoefficientFamily CoefficientFamily::custom(std::vector<CoefficientPair> pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].k = static_cast<int>(i + 1);
  return CoefficientFamily{CustomTable{std::move(pairs)}};
}

std::string CoefficientFamily::to_string() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GribovParams>) {
          return "gribov:mu=" + format_complex(p.mu) + ",lambda=" + format_complex(p.lambda);
        } else if constexpr (std::is_same_v<T, LaguerreParams>) {
          return "laguerre:alpha=" + format_real(p.alpha);
        } else if constexpr (std::is_same_v<T, UltrasphericalParams>) {
          return "ultraspherical:lambda=" + format_real(p.lambda);
        } else if constexpr (std::is_same_v<T, JacobiParams>) {
          return "jacobi:alpha=" + format_real(p.alpha) + ",beta=" + format_real(p.beta);
        } else {
          return "custom:" + std::to_string(p.pairs.size());
        }
      },
      kind_);
}

CoefficientPair gribov_coeffs(const GribovParams& params, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidParameter, "coefficient index must be >= 1");
  CoefficientPair out;
  out.k = k;
  out.delta = gribov_delta(k);
  out.beta = Complex(params.mu1() * k, params.mu2() * k);
  // i * lambda * delta = (-lambda2 * delta) + i (lambda1 * delta)
  out.alpha = Complex(-params.lambda2() * out.delta, params.lambda1() * out.delta);
  return out;
}

CoefficientPair family_coeffs(const CoefficientFamily& family, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidParameter, "coefficient index must be >= 1");
  Checked c = coeffs_at(family, k);
  if (!c.failed.empty()) {
    throw Error(ErrorKind::InvalidParameter, family.to_string() + " invalid at index " +
                                                 std::to_string(k) + ": " + c.failed);
  }
  return c.pair;
}

ValidityReport validate_family(const CoefficientFamily& family, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "validation size must be >= 1");
  ValidityReport report;
  report.entries.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    Checked c = coeffs_at(family, k);
    IndexValidity e{k, c.failed.empty(), c.failed};
    if (!e.ok && !report.first_invalid) report.first_invalid = k;
    if (e.ok && k < n && c.pair.alpha == Complex(0.0, 0.0)) report.recurrence_valid = false;
    report.entries.push_back(std::move(e));
  }
  report.valid = !report.first_invalid.has_value();
  if (!report.valid) report.recurrence_valid = false;
  return report;
}

void require_valid(const CoefficientFamily& family, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "size must be >= 1");
  const auto max = family.max_valid_index();
  if (max && n > *max) {
    const Checked c = coeffs_at(family, *max + 1);
    throw Error(ErrorKind::InvalidParameter, family.to_string() + " invalid at index " +
                                                 std::to_string(*max + 1) + ": " + c.failed);
  }
}

Complex parse_complex(std::string_view text) {
  static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
  static const std::regex real_only("^([+-]?" + num + ")$");
  static const std::regex imag_only("^([+-]?" + num + ")?i$");
  static const std::regex both("^([+-]?" + num + ")([+-]" + num + ")?i$");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, real_only)) return {std::stod(m[1]), 0.0};
  if (std::regex_match(s, m, both) && m[2].matched) {
    return {std::stod(m[1]), std::stod(m[2])};
  }
  if (std::regex_match(s, m, imag_only)) {
    if (!m[1].matched) return {0.0, 1.0};
    return {0.0, std::stod(m[1])};
  }
  if (s == "+i") return {0.0, 1.0};
  if (s == "-i") return {0.0, -1.0};
  throw Error(ErrorKind::InvalidParameter, "malformed complex number '" + s + "'");
}

CoefficientFamily parse_family(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::InvalidParameter, "family spec needs '<kind>:key=value,...'");
  }
  const std::string kind(text.substr(0, colon));
  std::vector<std::pair<std::string, std::string>> kv;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorKind::InvalidParameter, "malformed family item '" + std::string(item) + "'");
    }
    kv.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }

  auto take = [&](const std::string& key) -> std::string {
    for (auto it = kv.begin(); it != kv.end(); ++it) {
      if (it->first == key) {
        std::string v = it->second;
        kv.erase(it);
        return v;
      }
    }
    throw Error(ErrorKind::InvalidParameter, kind + " family needs '" + key + "='");
  };
  auto take_real = [&](const std::string& key) {
    const Complex z = parse_complex(take(key));
    if (z.imag() != 0.0) {
      throw Error(ErrorKind::InvalidParameter, kind + " parameter '" + key + "' must be real");
    }
    return z.real();
  };

  auto finish = [&](CoefficientFamily f) {
    if (!kv.empty()) {
      throw Error(ErrorKind::InvalidParameter, "unknown key '" + kv.front().first + "' for " + kind);
    }
    return f;
  };

  if (kind == "gribov") {
    const Complex mu = parse_complex(take("mu"));
    const Complex lambda = parse_complex(take("lambda"));
    return finish(CoefficientFamily::gribov(mu, lambda));
  }
  if (kind == "laguerre") return finish(CoefficientFamily::laguerre(take_real("alpha")));
  if (kind == "ultraspherical") {
    return finish(CoefficientFamily::ultraspherical(take_real("lambda")));
  }
  if (kind == "jacobi") {
    const double a = take_real("alpha");
    const double b = take_real("beta");
    return finish(CoefficientFamily::jacobi(a, b));
  }
  throw Error(ErrorKind::InvalidParameter, "unknown family kind '" + kind + "'");
}

}  // namespace gribov
