#pragma once

// Checks of the qualitative real-axis properties of Ptilde_n for real
// mu > 0 and real lambda, the least real eigenvalue, and eigenvalue
// trajectories in the truncation size n.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gribov/coefficients.hpp"
#include "gribov/polyrec.hpp"

namespace gribov {

enum class SignProperty {
  NoCommonZero,         // i)  Ptilde_{n-1}, Ptilde_n never vanish together
  ProductAtZero,        // ii) Ptilde_n Ptilde_{n-2} > 0 at zeros of Ptilde_{n-1}
  PositiveBelowMu,      // iii) Ptilde_n(x) > 0 for x < mu
  AlternatingAboveNMu,  // iv) (-1)^n Ptilde_n(x) > 0 for x > n mu
  SignPersistence,      // v)  same sign of Ptilde_{n-1}, Ptilde_{n-2} propagates
};

std::string_view property_id(SignProperty p) noexcept;

struct SignCounterexample {
  double x = 0.0;
  int n = 0;
  std::vector<double> values;  // the Ptilde values involved, lowest degree first
};

struct SignReport {
  SignProperty property;
  std::string grid;  // human-readable sampling description
  bool pass = true;
  int checks = 0;    // points (or zeros) examined
  std::optional<SignCounterexample> counterexample;
};

struct SignGrid {
  int points = 400;
  /// Width of the windows [mu - margin, mu) and (n mu, n mu + margin].
  double margin = 3.0;
  /// When set, every property samples this interval instead (filtered to
  /// the property's own domain).
  std::optional<std::pair<double, double>> range;
};

/// Reports for properties i)..v), degrees 2..n_max. Values come from an
/// extended-precision recurrence with a running rounding-error bound, and a
/// sign only counts when |Ptilde| exceeds that bound. i) and ii) are checked
/// at both ends and the middle of a few-ulp bracket around each real zero of
/// Ptilde_{n-1}. Throws InvalidParameter
/// for mu <= 0 or n_max < 2.
std::vector<SignReport> check_sign_properties(double mu, double lambda, int n_max,
                                              const SignGrid& grid = {});

struct RealZeroOptions {
  int samples_per_degree = 64;  // initial uniform partition size is this * degree
  double newton_tol = 1e-13;
};

/// Real zeros of Ptilde_m in [lo, hi] for a family with real coefficients,
/// by sign-change isolation, bisection and Newton polish. Sorted ascending.
std::vector<double> real_zeros(const CharPolyEvaluator& ev, int m, double lo, double hi,
                               const RealZeroOptions& opts = {});

struct SmallestZero {
  int index = 0;                 // odd degree 2k + 1
  std::optional<double> value;   // absent when isolation found no zero
};

struct SmallestZeroSequence {
  double x2 = 0.0;  // smallest zero of Ptilde_2
  std::vector<SmallestZero> entries;

  /// x_3 <= x_5 <= ... within tol, all entries present.
  bool nondecreasing(double tol = 1e-10) const;
  /// every present value lies in [mu - tol, x2).
  bool within(double mu, double tol = 1e-10) const;
};

/// Smallest real zero of Ptilde_{2k+1} on [mu, (2k+1) mu], k = 1..k_max.
/// Throws HypothesisViolated unless |lambda| < mu / (2 sqrt 2).
SmallestZeroSequence smallest_zero_sequence(double mu, double lambda, int k_max);

/// Smallest Re z over eigenvalues of H_n with |Im z| <= 1e-9 (1 + im_max).
std::optional<double> least_real_eigenvalue(double mu, double lambda, int n);

struct TrajectoryEntry {
  int n = 0;
  Complex z;
  double abs_err_to_kmu = 0.0;
  double match_distance = 0.0;  // |z_{k,n} - z_{k,n-1}|, 0 for the seed
};

struct Trajectory {
  int k = 0;
  GribovParams params;
  std::vector<TrajectoryEntry> entries;  // ascending n

  /// |z_{k,n} - k mu| nonincreasing for n >= n_from, up to resolution.
  bool nonincreasing_from(int n_from, double resolution) const;
};

struct TrajectoryOptions {
  /// Tracking is lost when the nearest eigenvalue at the next n lies farther
  /// than gap_fraction * |mu| from the current one.
  double gap_fraction = 0.5;
};

/// Tracks z_{k,n} over n_lo..n_hi by nearest-neighbour continuation, seeded
/// with the k-th eigenvalue in (Re, Im) order at n_lo. Throws TrackingLost.
Trajectory trajectory(const GribovParams& params, int k, int n_lo, int n_hi,
                      const TrajectoryOptions& opts = {});

}  // namespace gribov
