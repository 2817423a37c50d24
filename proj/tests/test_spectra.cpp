#include <cmath>

#include "doctest.h"
#include "gribov/error.hpp"
#include "gribov/operator.hpp"
#include "gribov/spectra.hpp"
#include "oracle.hpp"

using namespace gribov;

namespace {

std::vector<oracle::LC> reference_spectrum(Complex mu, Complex lambda, int n) {
  return oracle::roots(oracle::char_poly(oracle::gribov_matrix(mu, lambda, n)));
}

}  // namespace

TEST_CASE("localization box") {
  const auto b = localization_box({1.0, 0.2}, 10);
  CHECK(b.re_max == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(b.im_max == doctest::Approx(4 * std::sqrt(11.0)).epsilon(1e-15));
  CHECK(b.delta_n == doctest::Approx(10 * std::sqrt(11.0)).epsilon(1e-15));
  const auto z = localization_box({0.0, 0.0}, 7);
  CHECK(z.re_max == 0.0);
  CHECK(z.im_max == 0.0);
  const auto c = localization_box({Complex(0, 1), Complex(0, 1)}, 2);
  CHECK(c.re_max == doctest::Approx(4 * std::sqrt(3.0)).epsilon(1e-15));
  CHECK(c.im_max == doctest::Approx(2.0).epsilon(1e-15));
  double prev_re = 0, prev_im = 0;
  for (int n = 1; n < 100; ++n) {
    const auto x = localization_box({Complex(0.3, -0.2), Complex(-0.1, 0.6)}, n);
    CHECK(x.re_max >= prev_re);
    CHECK(x.im_max >= prev_im);
    prev_re = x.re_max;
    prev_im = x.im_max;
  }
}

TEST_CASE("aberth examples") {
  SUBCASE("diagonal") {
    const auto s = zeros_aberth(CoefficientFamily::gribov(1.0, 0.0), 5);
    REQUIRE(s.values.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(s.values[static_cast<std::size_t>(k)] - Complex(k + 1, 0)) <= 1e-12);
    CHECK(s.method == SpectrumMethod::Aberth);
  }
  SUBCASE("real pair") {
    const auto s = zeros_aberth(CoefficientFamily::gribov(1.0, 0.1), 2);
    CHECK(std::abs(s.values[0] - (3 - std::sqrt(0.92)) / 2) <= 1e-12);
    CHECK(std::abs(s.values[1] - (3 + std::sqrt(0.92)) / 2) <= 1e-12);
    CHECK(std::abs(s.values[0] - 1.020417) <= 1e-6);
  }
  SUBCASE("complex pair") {
    const auto s = zeros_aberth(CoefficientFamily::gribov(1.0, 1.0), 2);
    CHECK(std::abs(s.values[0] - Complex(1.5, -std::sqrt(7.0) / 2)) <= 1e-12);
    CHECK(std::abs(s.values[1] - Complex(1.5, std::sqrt(7.0) / 2)) <= 1e-12);
  }
  SUBCASE("residuals within tolerance and sorted") {
    const auto s = zeros_aberth(CoefficientFamily::gribov(Complex(1, 0.5), Complex(0.2, 0.3)), 25);
    REQUIRE(s.values.size() == 25);
    REQUIRE(s.residuals.size() == 25);
    for (double r : s.residuals) CHECK(r <= 1e-12);
    for (std::size_t i = 1; i < s.values.size(); ++i) {
      const bool ordered = s.values[i - 1].real() < s.values[i].real() ||
                           (s.values[i - 1].real() == s.values[i].real() && s.values[i - 1].imag() <= s.values[i].imag());
      CHECK(ordered);
    }
  }
  SUBCASE("no convergence is reported") {
    SolverOptions o;
    o.max_iter = 1;
    try {
      zeros_aberth(CoefficientFamily::gribov(1.0, 0.3), 20, o);
      FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
      CHECK(e.iterations() == 1);
      CHECK(e.kind() == ErrorKind::NoConvergence);
    }
  }
}

TEST_CASE("dense oracle examples") {
  SUBCASE("diagonal") {
    const auto s = eigen_dense(TridiagonalMatrix({1, 2, 3}, {0, 0}));
    CHECK(s.values == std::vector<Complex>{1, 2, 3});
    for (double r : s.residuals) CHECK(r == 0.0);
  }
  SUBCASE("2x2 agreement") {
    const auto f = CoefficientFamily::gribov(1.0, 1.0);
    CHECK(cross_check(eigen_dense(f, 2), zeros_aberth(f, 2)) <= 1e-10);
  }
  SUBCASE("laguerre") {
    const auto s = eigen_dense(CoefficientFamily::laguerre(-6), 2);
    CHECK(oracle::set_distance(s.values, std::vector<Complex>{{-4, -2}, {-4, 2}}) <= 1e-12);
  }
  SUBCASE("residual contract") {
    for (int n : {10, 60, 150}) {
      const auto m = build_matrix(CoefficientFamily::gribov(Complex(1, 0.5), Complex(0.2, 0.3)), n);
      const auto pairs = dense_eigenpairs(m);
      REQUIRE(pairs.size() == static_cast<std::size_t>(n));
      for (const auto& p : pairs) {
        double nv = 0;
        for (const auto& x : p.vector) nv += std::norm(x);
        CHECK(std::abs(std::sqrt(nv) - 1) <= 1e-14);
        CHECK(p.residual <= 1e-10 * m.norm());
        CHECK(std::abs(p.residual - eigen_residual(m, p.value, p.vector)) <= 1e-15 * m.norm());
      }
    }
  }
  SUBCASE("size limit") {
    CHECK_THROWS_AS(eigen_dense(CoefficientFamily::gribov(1.0, 0.1), kMaxDenseSize + 1), Error);
  }
}

TEST_CASE("both solvers against Durand-Kerner on the Faddeev-LeVerrier polynomial") {
  for (auto [mu, lambda] : {std::pair{Complex(1, 0), Complex(0.35, 0)}, std::pair{Complex(1, 0.5), Complex(0.2, 0.3)},
                            std::pair{Complex(-2, 0), Complex(0.6, 0)}}) {
    for (int n : {3, 6, 9}) {
      const auto ref = reference_spectrum(mu, lambda, n);
      const auto f = CoefficientFamily::gribov(mu, lambda);
      CAPTURE(n);
      CHECK(oracle::set_distance(eigen_dense(f, n).values, ref) <= 1e-9);
      CHECK(oracle::set_distance(zeros_aberth(f, n).values, ref) <= 1e-9);
    }
  }
}

TEST_CASE("cross check") {
  const auto f = CoefficientFamily::gribov(1.0, 0.1);
  const auto a = zeros_aberth(f, 20);
  CHECK(cross_check(a, a) == 0.0);
  CHECK(cross_check(a, eigen_dense(f, 20)) <= 1e-8);
  const auto g = CoefficientFamily::gribov(1.0, 1.0);
  CHECK(cross_check(zeros_aberth(g, 30), eigen_dense(g, 30)) <= 1e-7);
  CHECK_THROWS_AS(cross_check(a, zeros_aberth(f, 19)), Error);
  // matching is one-to-one, not nearest-neighbour per point
  CHECK(cross_check(std::vector<Complex>{0, 0.1}, std::vector<Complex>{0.1, 5}) == doctest::Approx(4.9));
  CHECK(cross_check(std::vector<Complex>{0, 1, 2}, std::vector<Complex>{2, 0, 1}) == 0.0);
}

TEST_CASE("verify localization") {
  const GribovParams p{1.0, 0.2};
  const auto r = verify_localization(eigen_dense(CoefficientFamily{p}, 10), localization_box(p, 10), 1e-9);
  CHECK(r.all_pass);
  CHECK(r.entries.size() == 10);

  const GribovParams d{1.0, 0.0};
  const auto s = eigen_dense(CoefficientFamily{d}, 5);
  CHECK(verify_localization(s, localization_box(d, 5), 1e-9).all_pass);
  CHECK(std::abs(s.values.back().real()) == localization_box(d, 5).re_max);

  const GribovParams a{Complex(0, 1), 0.0};
  const auto sa = eigen_dense(CoefficientFamily{a}, 3);
  const auto ra = verify_localization(sa, localization_box(a, 3), 1e-9);
  CHECK(ra.all_pass);
  for (const auto& z : sa.values) CHECK(z.real() == 0.0);

  BoundBox tight = localization_box(p, 10);
  tight.im_max = 0;
  tight.re_max = 1;
  const auto bad = verify_localization(eigen_dense(CoefficientFamily{p}, 10), tight, 0.0);
  CHECK_FALSE(bad.all_pass);
}

TEST_CASE("sort order") {
  std::vector<Complex> v = {Complex(2, 1), Complex(1, 5), Complex(2, -1), Complex(1, -5)};
  sort_spectrum_order(v);
  CHECK(v == std::vector<Complex>{Complex(1, -5), Complex(1, 5), Complex(2, -1), Complex(2, 1)});
}

TEST_CASE("aberth at sizes beyond the attainable tolerance") {
  const auto f = CoefficientFamily::gribov(Complex(1, 0.5), Complex(0.2, 0.3));
  const auto a = zeros_aberth(f, 100);
  CHECK(a.values.size() == 100);
  CHECK(cross_check(a, eigen_dense(f, 100)) <= 1e-6);
  SolverOptions strict;
  strict.stall_tol = 0.0;
  CHECK_THROWS_AS(zeros_aberth(f, 100, strict), NoConvergence);
}
