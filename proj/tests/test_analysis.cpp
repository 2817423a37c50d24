#include <cmath>

#include "doctest.h"
#include "gribov/analysis.hpp"
#include "gribov/error.hpp"
#include "oracle.hpp"

using namespace gribov;

namespace {

double x2_closed(double mu, double lambda) { return (3 * mu - std::sqrt(mu * mu - 8 * lambda * lambda)) / 2; }

std::vector<double> real_roots_reference(double mu, double lambda, int n) {
  std::vector<double> out;
  for (const auto& z : oracle::roots(oracle::char_poly(oracle::gribov_matrix(mu, lambda, n)))) {
    if (std::abs(z.imag()) < 1e-12L * (1 + std::abs(z))) out.push_back(static_cast<double>(z.real()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("property ids") {
  CHECK(property_id(SignProperty::NoCommonZero) == "i");
  CHECK(property_id(SignProperty::ProductAtZero) == "ii");
  CHECK(property_id(SignProperty::PositiveBelowMu) == "iii");
  CHECK(property_id(SignProperty::AlternatingAboveNMu) == "iv");
  CHECK(property_id(SignProperty::SignPersistence) == "v");
}

TEST_CASE("real zeros") {
  for (double lambda : {0.1, 0.3, 0.6}) {
    for (int n : {3, 6, 9}) {
      const auto f = CoefficientFamily::gribov(1.0, lambda);
      const CharPolyEvaluator ev(f, n);
      const auto got = real_zeros(ev, n, -1.0, n + 2.0);
      const auto want = real_roots_reference(1.0, lambda, n);
      CAPTURE(lambda);
      CAPTURE(n);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-12);
    }
  }
  SUBCASE("exact grid hit") {
    const CharPolyEvaluator ev(CoefficientFamily::gribov(1.0, 0.0), 3);
    const auto z = real_zeros(ev, 3, 0.0, 4.0);
    CHECK(z == std::vector<double>{1, 2, 3});
  }
  SUBCASE("empty range") {
    const CharPolyEvaluator ev(CoefficientFamily::gribov(1.0, 0.2), 3);
    CHECK(real_zeros(ev, 3, 5.0, 5.0).empty());
    CHECK(real_zeros(ev, 3, 10.0, 12.0).empty());
  }
}

TEST_CASE("sign properties") {
  SUBCASE("mu=1 lambda=0.2 on a fixed window") {
    SignGrid g;
    g.points = 400;
    g.range = std::pair{-2.0, 12.0};
    const auto reports = check_sign_properties(1.0, 0.2, 10, g);
    REQUIRE(reports.size() == 5);
    for (const auto& r : reports) {
      CAPTURE(property_id(r.property));
      CHECK(r.pass);
      CHECK_FALSE(r.counterexample.has_value());
      CHECK(r.checks > 0);
    }
  }
  SUBCASE("default windows") {
    for (double lambda : {0.1, 0.5, 2.0}) {
      for (const auto& r : check_sign_properties(1.0, lambda, 12)) {
        CAPTURE(lambda);
        CAPTURE(property_id(r.property));
        CHECK(r.pass);
      }
    }
  }
  SUBCASE("diagonal case shares zeros") {
    // lambda = 0: Ptilde_n = prod (k mu - z) vanishes with Ptilde_{n-1}
    for (const auto& r : check_sign_properties(1.0, 0.0, 8)) {
      CAPTURE(property_id(r.property));
      const bool shared = r.property == SignProperty::NoCommonZero || r.property == SignProperty::ProductAtZero;
      CHECK(r.pass == !shared);
      CHECK(r.counterexample.has_value() == shared);
    }
  }
  SUBCASE("iii and iv against direct determinants") {
    const auto h = oracle::gribov_matrix(1.0, 0.3, 6);
    for (int i = 0; i < 50; ++i) {
      const long double x = -2.0L + 2.999L * i / 50;
      CHECK(oracle::det_shifted(h, x).real() > 0);
      const long double y = 6.001L + 3.0L * i / 50;
      CHECK(oracle::det_shifted(h, y).real() > 0);  // (-1)^6 Ptilde_6 > 0
    }
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(check_sign_properties(0.0, 0.2, 5), Error);
    CHECK_THROWS_AS(check_sign_properties(-1.0, 0.2, 5), Error);
    CHECK_THROWS_AS(check_sign_properties(1.0, 0.2, 1), Error);
  }
}

TEST_CASE("smallest zero sequence") {
  SUBCASE("lambda=0.1") {
    const auto s = smallest_zero_sequence(1.0, 0.1, 10);
    CHECK(s.x2 == doctest::Approx(x2_closed(1, 0.1)).epsilon(1e-14));
    CHECK(s.x2 == doctest::Approx(1.0204168).epsilon(1e-7));
    REQUIRE(s.entries.size() == 10);
    CHECK(s.entries.front().index == 3);
    CHECK(s.entries.back().index == 21);
    CHECK(s.nondecreasing());
    CHECK(s.within(1.0));
    for (const auto& e : s.entries) {
      REQUIRE(e.value.has_value());
      CHECK(*e.value >= 1.0);
      CHECK(*e.value < 1.0205);
    }
  }
  SUBCASE("values against reference roots") {
    const auto s = smallest_zero_sequence(1.0, 0.3, 3);
    for (const auto& e : s.entries) {
      const auto ref = real_roots_reference(1.0, 0.3, e.index);
      double smallest = INFINITY;
      for (double x : ref) {
        if (x >= 1.0) smallest = std::min(smallest, x);
      }
      CHECK(*e.value == doctest::Approx(smallest).epsilon(1e-12));
    }
  }
  SUBCASE("lambda -> 0") {
    const auto s = smallest_zero_sequence(1.0, 1e-5, 5);
    for (const auto& e : s.entries) CHECK(std::abs(*e.value - 1.0) <= 1e-8);
  }
  SUBCASE("lambda=0.3 monotone up to k=10") {
    const auto s = smallest_zero_sequence(1.0, 0.3, 10);
    CHECK(s.nondecreasing());
    CHECK(s.within(1.0));
  }
  SUBCASE("hypothesis") {
    CHECK_THROWS_AS(smallest_zero_sequence(1.0, 0.36, 3), Error);
    try {
      smallest_zero_sequence(1.0, 1.0 / (2 * std::sqrt(2.0)), 3);
      FAIL("expected HypothesisViolated");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::HypothesisViolated);
    }
  }
  SUBCASE("predicates") {
    SmallestZeroSequence s;
    s.x2 = 1.5;
    s.entries = {{3, 1.1}, {5, 1.2}, {7, 1.2 - 1e-12}};
    CHECK(s.nondecreasing());
    CHECK(s.within(1.0));
    s.entries.push_back({9, 1.1});
    CHECK_FALSE(s.nondecreasing());
    s.entries.push_back({11, 1.6});
    CHECK_FALSE(s.within(1.0));
    s.entries = {{3, std::nullopt}};
    CHECK_FALSE(s.nondecreasing());
  }
}

TEST_CASE("least real eigenvalue") {
  CHECK(least_real_eigenvalue(1.0, 0.0, 10) == doctest::Approx(1.0).epsilon(1e-15));
  const auto a = least_real_eigenvalue(1.0, 0.2, 30);
  REQUIRE(a.has_value());
  CHECK(*a >= 1.0);
  CHECK(*a < x2_closed(1.0, 0.2));
  const auto b = least_real_eigenvalue(1.0, 0.2, 40);
  REQUIRE(b.has_value());
  CHECK(std::abs(*a - *b) <= 1e-6);
  // n = 2 beyond the threshold: only complex eigenvalues
  CHECK_FALSE(least_real_eigenvalue(1.0, 1.0, 2).has_value());
  CHECK_THROWS_AS(least_real_eigenvalue(0.0, 0.2, 5), Error);
}

TEST_CASE("trajectory") {
  SUBCASE("diagonal") {
    for (int k : {1, 3}) {
      const auto t = trajectory({1.0, 0.0}, k, 5, 12);
      REQUIRE(t.entries.size() == 8);
      for (const auto& e : t.entries) {
        CHECK(e.z == Complex(k, 0));
        CHECK(e.abs_err_to_kmu == 0.0);
        CHECK(e.match_distance == 0.0);
      }
    }
  }
  SUBCASE("lambda=0.05 tail") {
    const auto t1 = trajectory({1.0, 0.05}, 1, 5, 40);
    CHECK(t1.nonincreasing_from(10, 1e-12));
    CHECK(t1.entries.front().n == 5);
    CHECK(t1.entries.back().n == 40);
    const auto t2 = trajectory({1.0, 0.05}, 2, 5, 40);
    CHECK(t2.nonincreasing_from(10, 1e-12));
    for (std::size_t i = 1; i < t2.entries.size(); ++i) CHECK(t2.entries[i].n == t2.entries[i - 1].n + 1);
  }
  SUBCASE("tracking lost") {
    TrajectoryOptions o;
    o.gap_fraction = 1e-9;
    try {
      trajectory({1.0, 0.3}, 1, 3, 10, o);
      FAIL("expected TrackingLost");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TrackingLost);
    }
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(trajectory({1.0, 0.1}, 6, 5, 10), Error);
    CHECK_THROWS_AS(trajectory({1.0, 0.1}, 1, 10, 5), Error);
    CHECK_THROWS_AS(trajectory({1.0, 0.1}, 0, 5, 10), Error);
  }
  SUBCASE("resolution predicate") {
    Trajectory t;
    t.entries = {{10, 1, 0.5, 0}, {11, 1, 0.5 + 5e-13, 0}, {12, 1, 0.4, 0}};
    CHECK(t.nonincreasing_from(10, 1e-12));
    CHECK_FALSE(t.nonincreasing_from(10, 1e-13));
    CHECK(t.nonincreasing_from(11, 0.0));
  }
}
