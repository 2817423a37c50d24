#include "gribov/analysis.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

#include "gribov/error.hpp"
#include "gribov/spectra.hpp"

namespace gribov {
namespace {

int sign_at(const CharPolyEvaluator& ev, int m, double x) {
  return ev.evaluate(m, Complex(x, 0.0)).value.real_sign();
}

// Ptilde_m for real mu, lambda in extended precision with a running bound on
// the rounding error. A sign counts only when |p| exceeds the bound.
class RealRecurrence {
 public:
  struct Value {
    long double p = 1;
    long double err = 0;
    int sign() const { return std::abs(p) > err ? (p > 0 ? 1 : -1) : 0; }
  };

  RealRecurrence(double mu, double lambda, int n) {
    const long double l2 = static_cast<long double>(lambda) * static_cast<long double>(lambda);
    for (int k = 1; k <= n; ++k) {
      const long double kk = k;
      beta_.push_back(static_cast<long double>(mu) * kk);
      // alpha_k^2 = -(lambda delta_k)^2
      alpha_sq_.push_back(-l2 * kk * kk * (kk + 1));
    }
  }

  int degree() const { return static_cast<int>(beta_.size()); }

  /// Ptilde_0..Ptilde_m at x.
  std::vector<Value> sequence(long double x, int m) const {
    constexpr long double u = LDBL_EPSILON;
    std::vector<Value> out(static_cast<std::size_t>(m + 1));
    Value p2{0, 0};
    Value p1{1, 0};
    for (int k = 1; k <= m; ++k) {
      const long double t = beta_[static_cast<std::size_t>(k - 1)] - x;
      const long double a2 = k > 1 ? alpha_sq_[static_cast<std::size_t>(k - 2)] : 0;
      Value v;
      v.p = t * p1.p - a2 * p2.p;
      v.err = std::abs(t) * p1.err + std::abs(a2) * p2.err +
              3 * u * (std::abs(t * p1.p) + std::abs(a2 * p2.p)) + u * std::abs(v.p);
      out[static_cast<std::size_t>(k)] = v;
      p2 = p1;
      p1 = v;
    }
    out[0] = Value{1, 0};
    return out;
  }

  Value at(int m, long double x) const { return sequence(x, m)[static_cast<std::size_t>(m)]; }

  struct Bracket {
    long double lo;
    long double hi;
    long double mid() const { return 0.5L * (lo + hi); }
  };

  /// Sign-change brackets of Ptilde_m on [lo, hi], bisected down to a few
  /// ulps or until the sign at the midpoint is no longer certain.
  std::vector<Bracket> zero_brackets(int m, long double lo, long double hi, int samples) const {
    std::vector<Bracket> out;
    const int cells = std::max(samples * m, 16);
    const long double h = (hi - lo) / cells;
    long double a = lo;
    int sa = at(m, a).sign();
    for (int i = 1; i <= cells; ++i) {
      const long double b = i == cells ? hi : lo + h * i;
      const int sb = at(m, b).sign();
      if (sb == 0) continue;
      if (sa != 0 && sa != sb) {
        long double l = a;
        long double r = b;
        while (r - l > 8 * LDBL_EPSILON * std::max(std::abs(l), std::abs(r))) {
          const long double mid = 0.5L * (l + r);
          const int sm = at(m, mid).sign();
          if (sm == 0) {
            // Step out from the unresolved midpoint to the nearest certain signs.
            long double d = 4 * LDBL_EPSILON * std::max(std::abs(mid), 1.0L);
            long double nl = mid;
            long double nr = mid;
            while (nl > l && at(m, nl).sign() != sa) nl = std::max(l, mid - (d *= 2));
            d = 4 * LDBL_EPSILON * std::max(std::abs(mid), 1.0L);
            while (nr < r && at(m, nr).sign() != sb) nr = std::min(r, mid + (d *= 2));
            l = nl;
            r = nr;
            break;
          }
          (sm == sa ? l : r) = mid;
        }
        out.push_back({l, r});
      }
      a = b;
      sa = sb;
    }
    return out;
  }

 private:
  std::vector<long double> beta_;
  std::vector<long double> alpha_sq_;
};

std::vector<double> window(double lo, double hi, int points, bool include_lo, bool include_hi) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(points));
  const int slots = points - 1 + (include_lo ? 0 : 1) + (include_hi ? 0 : 1);
  const double h = (hi - lo) / std::max(slots, 1);
  for (int i = 0; i < points; ++i) xs.push_back(lo + h * (i + (include_lo ? 0 : 1)));
  return xs;
}

std::string describe(double lo, double hi, int points, bool lo_open, bool hi_open) {
  std::ostringstream os;
  os << points << " points on " << (lo_open ? "(" : "[") << lo << ", " << hi
     << (hi_open ? ")" : "]");
  return os.str();
}

std::vector<double> values_of(const RealRecurrence& rec, long double x, int lo_deg, int hi_deg) {
  const auto seq = rec.sequence(x, hi_deg);
  std::vector<double> v;
  for (int m = std::max(lo_deg, 0); m <= hi_deg; ++m) {
    v.push_back(static_cast<double>(seq[static_cast<std::size_t>(m)].p));
  }
  return v;
}

SignReport make_report(SignProperty p, std::string grid) {
  SignReport r{p, std::move(grid), true, 0, std::nullopt};
  return r;
}

void fail(SignReport& r, double x, int n, std::vector<double> values) {
  if (!r.pass) return;
  r.pass = false;
  r.counterexample = SignCounterexample{x, n, std::move(values)};
}

}  // namespace

std::string_view property_id(SignProperty p) noexcept {
  switch (p) {
    case SignProperty::NoCommonZero: return "i";
    case SignProperty::ProductAtZero: return "ii";
    case SignProperty::PositiveBelowMu: return "iii";
    case SignProperty::AlternatingAboveNMu: return "iv";
    case SignProperty::SignPersistence: return "v";
  }
  return "?";
}

std::vector<double> real_zeros(const CharPolyEvaluator& ev, int m, double lo, double hi,
                               const RealZeroOptions& opts) {
  std::vector<double> roots;
  if (m < 1 || !(hi > lo)) return roots;
  const int cells = std::max(opts.samples_per_degree * m, 16);
  const double h = (hi - lo) / cells;
  double a = lo;
  int sa = sign_at(ev, m, a);
  if (sa == 0) roots.push_back(a);
  for (int i = 1; i <= cells; ++i) {
    const double b = i == cells ? hi : lo + h * i;
    const int sb = sign_at(ev, m, b);
    if (sb == 0) {
      roots.push_back(b);
    } else if (sa != 0 && sa != sb) {
      double l = a;
      double r = b;
      for (int it = 0; it < 200 && r - l > 2.0 * std::numeric_limits<double>::epsilon() *
                                                 std::max(std::abs(l), std::abs(r));
           ++it) {
        const double mid = 0.5 * (l + r);
        const int sm = sign_at(ev, m, mid);
        if (sm == 0) {
          l = r = mid;
          break;
        }
        (sm == sa ? l : r) = mid;
      }
      double x = 0.5 * (l + r);
      for (int it = 0; it < 4; ++it) {
        const CharPolyValue pv = ev.evaluate(m, Complex(x, 0.0), true);
        if (pv.value.is_zero() || pv.derivative->is_zero()) break;
        const double step = quotient(pv.value, *pv.derivative).real();
        const double next = x - step;
        if (!(next >= a && next <= b)) break;
        x = next;
        if (std::abs(step) <= opts.newton_tol * (1.0 + std::abs(x))) break;
      }
      roots.push_back(x);
    }
    a = b;
    sa = sb;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<SignReport> check_sign_properties(double mu, double lambda, int n_max,
                                              const SignGrid& grid) {
  if (!(mu > 0.0)) throw Error(ErrorKind::InvalidParameter, "sign properties need mu > 0");
  if (!std::isfinite(lambda)) throw Error(ErrorKind::InvalidParameter, "lambda must be finite");
  if (n_max < 2) throw Error(ErrorKind::InvalidParameter, "sign properties need n_max >= 2");
  if (grid.points < 1) throw Error(ErrorKind::InvalidParameter, "grid needs >= 1 point");
  if (!(grid.margin > 0.0)) throw Error(ErrorKind::InvalidParameter, "grid margin must be > 0");
  const RealRecurrence rec(mu, lambda, n_max);

  auto sample = [&](double lo, double hi, bool lo_open, bool hi_open) {
    if (!grid.range) return window(lo, hi, grid.points, !lo_open, !hi_open);
    std::vector<double> xs;
    for (double x : window(grid.range->first, grid.range->second, grid.points, true, true)) {
      const bool above = lo_open ? x > lo : x >= lo;
      const bool below = hi_open ? x < hi : x <= hi;
      if (above && below) xs.push_back(x);
    }
    return xs;
  };
  auto label = [&](const std::string& domain) {
    if (grid.range) {
      return describe(grid.range->first, grid.range->second, grid.points, false, false) +
             " within " + domain;
    }
    return std::to_string(grid.points) + " points on " + domain;
  };
  std::ostringstream margin;
  margin << grid.margin;

  SignReport r1 = make_report(SignProperty::NoCommonZero,
                              "real zeros of Ptilde_{n-1}, n = 2.." + std::to_string(n_max));
  SignReport r2 = make_report(SignProperty::ProductAtZero, r1.grid);
  SignReport r3 = make_report(SignProperty::PositiveBelowMu, label("[mu - " + margin.str() + ", mu)"));
  SignReport r4 = make_report(SignProperty::AlternatingAboveNMu,
                              label("(n mu, n mu + " + margin.str() + "]"));
  SignReport r5 = make_report(SignProperty::SignPersistence, label("[mu, n mu]"));

  for (int n = 2; n <= n_max; ++n) {
    // i), ii) on the bracket of each real zero of Ptilde_{n-1}
    const long double lo = static_cast<long double>(mu) - 1;
    const long double hi = static_cast<long double>(n - 1) * mu + 1;
    for (const auto& br : rec.zero_brackets(n - 1, lo, hi, 64)) {
      ++r1.checks;
      ++r2.checks;
      bool distinct = true;
      bool positive = true;
      for (long double x : {br.lo, br.mid(), br.hi}) {
        const auto seq = rec.sequence(x, n);
        const int sn = seq[static_cast<std::size_t>(n)].sign();
        const int sm = seq[static_cast<std::size_t>(n - 2)].sign();
        if (sn == 0 || sn != rec.at(n, br.lo).sign()) distinct = false;
        if (!(sn * sm > 0)) positive = false;
      }
      if (!distinct) fail(r1, static_cast<double>(br.mid()), n, values_of(rec, br.mid(), n - 2, n));
      if (!positive) fail(r2, static_cast<double>(br.mid()), n, values_of(rec, br.mid(), n - 2, n));
    }
    for (double x : sample(mu - grid.margin, mu, false, true)) {
      ++r3.checks;
      if (!(rec.at(n, x).sign() > 0)) fail(r3, x, n, values_of(rec, x, n, n));
    }
    for (double x : sample(n * mu, n * mu + grid.margin, true, false)) {
      ++r4.checks;
      if (!(rec.at(n, x).sign() * (n % 2 == 0 ? 1 : -1) > 0)) fail(r4, x, n, values_of(rec, x, n, n));
    }
    // v) as a pointwise implication on [mu, n mu]
    for (double x : sample(mu, n * mu, false, false)) {
      const auto seq = rec.sequence(x, n_max);
      const int s1 = seq[static_cast<std::size_t>(n - 1)].sign();
      const int s2 = seq[static_cast<std::size_t>(n - 2)].sign();
      if (s1 == 0 || s1 != s2) continue;
      ++r5.checks;
      for (int k = n - 2; k <= n_max; ++k) {
        if (seq[static_cast<std::size_t>(k)].sign() != s1) {
          fail(r5, x, n, values_of(rec, x, n - 2, k));
          break;
        }
      }
    }
  }
  return {r1, r2, r3, r4, r5};
}

bool SmallestZeroSequence::nondecreasing(double tol) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].value) return false;
    if (i > 0 && *entries[i].value < *entries[i - 1].value - tol) return false;
  }
  return true;
}

bool SmallestZeroSequence::within(double mu, double tol) const {
  return std::all_of(entries.begin(), entries.end(), [&](const SmallestZero& e) {
    return !e.value || (*e.value >= mu - tol && *e.value < x2);
  });
}

SmallestZeroSequence smallest_zero_sequence(double mu, double lambda, int k_max) {
  if (!(mu > 0.0)) throw Error(ErrorKind::InvalidParameter, "smallest zeros need mu > 0");
  if (k_max < 1) throw Error(ErrorKind::InvalidParameter, "k_max must be >= 1");
  if (!(std::abs(lambda) < mu / (2.0 * std::sqrt(2.0)))) {
    throw Error(ErrorKind::HypothesisViolated,
                "smallest-zero sequence needs |lambda| < mu / (2 sqrt 2)");
  }
  const int n_max = 2 * k_max + 1;
  const RealRecurrence rec(mu, lambda, n_max);
  const long double lo = static_cast<long double>(mu) - 1;
  SmallestZeroSequence out;
  const auto z2 = rec.zero_brackets(2, lo, 2.0L * mu + 1, 256);
  if (z2.empty()) throw Error(ErrorKind::NoRealZero, "Ptilde_2 has no real zero");
  out.x2 = static_cast<double>(z2.front().mid());
  const long double slack = 1e-12L * (1 + mu);
  for (int k = 1; k <= k_max; ++k) {
    const int m = 2 * k + 1;
    SmallestZero e{m, std::nullopt};
    for (const auto& br : rec.zero_brackets(m, lo, static_cast<long double>(m) * mu + 1, 64)) {
      const long double x = br.mid();
      if (x >= mu - slack && x <= m * mu + slack) {
        e.value = static_cast<double>(x);
        break;
      }
    }
    out.entries.push_back(e);
  }
  return out;
}

std::optional<double> least_real_eigenvalue(double mu, double lambda, int n) {
  if (!(mu > 0.0)) throw Error(ErrorKind::InvalidParameter, "least real eigenvalue needs mu > 0");
  const GribovParams params{mu, lambda};
  const Spectrum s = eigen_dense(CoefficientFamily{params}, n);
  const double im_tol = 1e-9 * (1.0 + localization_box(params, n).im_max);
  std::optional<double> best;
  for (const Complex& z : s.values) {
    if (std::abs(z.imag()) <= im_tol && (!best || z.real() < *best)) best = z.real();
  }
  return best;
}

bool Trajectory::nonincreasing_from(int n_from, double resolution) const {
  const TrajectoryEntry* prev = nullptr;
  for (const TrajectoryEntry& e : entries) {
    if (e.n < n_from) continue;
    if (prev && e.abs_err_to_kmu > prev->abs_err_to_kmu + resolution) return false;
    prev = &e;
  }
  return true;
}

Trajectory trajectory(const GribovParams& params, int k, int n_lo, int n_hi,
                      const TrajectoryOptions& opts) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorKind::InvalidParameter, "bad n range");
  if (k < 1 || k > n_lo) throw Error(ErrorKind::InvalidParameter, "need 1 <= k <= min(n range)");
  const CoefficientFamily family{params};
  const Complex target = params.mu * static_cast<double>(k);
  const double gap = opts.gap_fraction * std::max(std::abs(params.mu), 1e-300);

  Trajectory out;
  out.k = k;
  out.params = params;
  Complex prev;
  for (int n = n_lo; n <= n_hi; ++n) {
    const Spectrum s = eigen_dense(family, n);
    TrajectoryEntry e;
    e.n = n;
    if (n == n_lo) {
      e.z = s.values[static_cast<std::size_t>(k - 1)];
    } else {
      std::size_t best = 0;
      std::size_t second = s.values.size();
      for (std::size_t i = 1; i < s.values.size(); ++i) {
        if (std::abs(s.values[i] - prev) < std::abs(s.values[best] - prev)) {
          second = best;
          best = i;
        } else if (second == s.values.size() ||
                   std::abs(s.values[i] - prev) < std::abs(s.values[second] - prev)) {
          second = i;
        }
      }
      e.z = s.values[best];
      e.match_distance = std::abs(e.z - prev);
      const bool tie = second < s.values.size() &&
                       std::abs(s.values[second] - prev) - e.match_distance <= 1e-12;
      if (e.match_distance > gap || tie) {
        std::ostringstream os;
        os.precision(17);
        os << "tracking of z_" << k << " lost at n = " << n << ": previous " << prev
           << ", candidate " << e.z;
        if (second < s.values.size()) os << ", runner-up " << s.values[second];
        throw Error(ErrorKind::TrackingLost, os.str());
      }
    }
    e.abs_err_to_kmu = std::abs(e.z - target);
    prev = e.z;
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace gribov
