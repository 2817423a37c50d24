#include <cmath>
#include <random>

#include "doctest.h"
#include "gribov/error.hpp"
#include "gribov/polyrec.hpp"
#include "oracle.hpp"

using namespace gribov;

namespace {

Complex lc(oracle::LC z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("scaled values normalize") {
  const ScaledPolyValue v(Complex(3.0, -4.0), 10);
  CHECK(std::abs(v.mantissa()) >= 0.5);
  CHECK(std::abs(v.mantissa()) < 2.0);
  CHECK(std::abs(v.to_complex() - Complex(3.0, -4.0) * std::ldexp(1.0, 10)) < 1e-9);
  CHECK(v.log2_abs() == doctest::Approx(std::log2(5.0) + 10));
  CHECK(ScaledPolyValue(Complex(0.5, 0), 2) == ScaledPolyValue(Complex(2.0, 0), 0));
  CHECK(ScaledPolyValue(0.0, 7) == ScaledPolyValue(0.0, -3));
  CHECK(ScaledPolyValue(0.0).is_zero());
  CHECK(ScaledPolyValue(-2.5).real_sign() == -1);
  CHECK(ScaledPolyValue(0.0).real_sign() == 0);

  SUBCASE("arithmetic far outside double range") {
    ScaledPolyValue big(1.0);
    for (int i = 0; i < 200; ++i) big = big * ScaledPolyValue(1e30);
    CHECK(big.log2_abs() == doctest::Approx(6000 * std::log2(10.0)).epsilon(1e-12));
    const ScaledPolyValue sum = big + big;
    CHECK(sum.log2_abs() == doctest::Approx(big.log2_abs() + 1).epsilon(1e-14));
    CHECK((big - big).is_zero());
    CHECK(abs_ratio(big, sum) == doctest::Approx(0.5));
    CHECK(std::abs(quotient(sum, big) - Complex(2, 0)) < 1e-15);
    CHECK(std::isinf(big.to_complex().real()));
  }
}

TEST_CASE("P sequence examples") {
  const auto f = CoefficientFamily::gribov(1.0, 1.0);
  SUBCASE("z = beta_1 zeroes P_2") {
    const auto s = eval_P_sequence(f, 2, 1.0);
    CHECK(s.value(1) == ScaledPolyValue(1.0));
    CHECK(s.value(2).is_zero());
  }
  SUBCASE("two hand-unrolled steps at z = 0") {
    const auto s = eval_P_sequence(f, 3, 0.0);
    CHECK(std::abs(s.value(2).to_complex() - Complex(0, 1 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(s.value(3).to_complex() - Complex(-std::sqrt(2.0 / 3.0), 0)) < 1e-15);
  }
  SUBCASE("N = 1") {
    for (Complex z : {Complex(0, 0), Complex(3, -7), Complex(1e8, 1e8)}) {
      const auto s = eval_P_sequence(CoefficientFamily::laguerre(-6), 1, z);
      REQUIRE(s.values.size() == 1);
      CHECK(s.value(1).to_complex() == Complex(1, 0));
    }
  }
  SUBCASE("vanishing alpha is rejected") {
    CHECK_THROWS_AS(eval_P_sequence(CoefficientFamily::gribov(1.0, 0.0), 3, 0.5), Error);
    CHECK_NOTHROW(eval_P_sequence(CoefficientFamily::gribov(1.0, 0.0), 1, 0.5));
    CHECK_THROWS_AS(eval_P_sequence(CoefficientFamily::laguerre(-6), 7, 0.5), Error);
  }
}

TEST_CASE("P sequence satisfies the three-term recurrence") {
  const auto f = CoefficientFamily::gribov(Complex(1, 0.5), Complex(0.2, 0.3));
  const Complex z(2.5, -1.0);
  const auto s = eval_P_sequence(f, 12, z, true);
  for (int n = 2; n < 12; ++n) {
    const auto cm = family_coeffs(f, n - 1);
    const auto c = family_coeffs(f, n);
    const Complex lhs = cm.alpha * s.value(n - 1).to_complex() + c.beta * s.value(n).to_complex() +
                        c.alpha * s.value(n + 1).to_complex();
    CHECK(rel(lhs, z * s.value(n).to_complex()) < 1e-12 * std::abs(s.value(n + 1).to_complex()) + 1e-12);
  }
  // derivatives against central differences
  const double h = 1e-6 * (1 + std::abs(z));
  const auto sp = eval_P_sequence(f, 12, z + h);
  const auto sm = eval_P_sequence(f, 12, z - h);
  for (int n = 1; n <= 12; ++n) {
    const Complex fd = (sp.value(n).to_complex() - sm.value(n).to_complex()) / (2 * h);
    CHECK(std::abs(fd - s.deriv(n).to_complex()) <= 1e-6 * (1 + std::abs(fd)));
  }
}

TEST_CASE("char poly examples") {
  CHECK(eval_char_poly(CoefficientFamily::gribov(1.0, 0.7), 1, 1.0).value.is_zero());
  CHECK(std::abs(eval_char_poly(CoefficientFamily::gribov(1.0, 1.0), 2, 0.0).value.to_complex() - 4.0) < 1e-14);
  CHECK(eval_char_poly(CoefficientFamily::gribov(1.0, 0.0), 3, 2.0).value.is_zero());
  CHECK_THROWS_AS(eval_char_poly(CoefficientFamily::laguerre(-6), 6, 0.0), Error);
}

TEST_CASE("char poly matches direct determinants") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (auto [mu, lambda] : {std::pair{Complex(1, 0), Complex(0.1, 0)}, std::pair{Complex(1, 0.5), Complex(0.2, 0.3)},
                            std::pair{Complex(-2, 0), Complex(1, 0)}}) {
    for (int n : {1, 2, 5, 9, 14}) {
      const auto f = CoefficientFamily::gribov(mu, lambda);
      const CharPolyEvaluator ev(f, n);
      const auto h = oracle::gribov_matrix(mu, lambda, n);
      for (int t = 0; t < 5; ++t) {
        const Complex z(u(rng) * n, u(rng));
        const Complex want = lc(oracle::det_shifted(h, {z.real(), z.imag()}));
        const Complex got = eval_char_poly(f, n, z).value.to_complex();
        CAPTURE(n);
        CHECK(std::abs(got - want) <= 1e-11 * std::max(1.0, std::abs(want)));
        CHECK(std::abs(ev(z).value.to_complex() - got) <= 1e-15 * std::max(1.0, std::abs(got)));
      }
    }
  }
}

TEST_CASE("char poly derivative against finite differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto f = CoefficientFamily::gribov(Complex(1, 0.2), Complex(0.4, -0.1));
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 15;
    const Complex z(u(rng) * n, u(rng) * n);
    const double h = 1e-6 * (1 + std::abs(z));
    const auto v = eval_char_poly(f, n, z, true);
    const Complex fd = (eval_char_poly(f, n, z + h).value.to_complex() -
                        eval_char_poly(f, n, z - h).value.to_complex()) / (2 * h);
    const Complex d = v.derivative->to_complex();
    CHECK(std::abs(fd - d) <= 1e-6 * std::abs(d));
  }
}

TEST_CASE("char poly coefficients") {
  SUBCASE("examples") {
    const auto c = char_poly_coefficients(CoefficientFamily::gribov(1.0, 1.0), 2);
    REQUIRE(c.size() == 3);
    CHECK(std::abs(c[0] - 4.0) < 1e-14);
    CHECK(std::abs(c[1] + 3.0) < 1e-14);
    CHECK(c[2] == Complex(1, 0));
    const auto d = char_poly_coefficients(CoefficientFamily::gribov(1.0, 0.0), 2);
    CHECK(d[0] == Complex(2, 0));
    CHECK(d[1] == Complex(-3, 0));
    const auto e = char_poly_coefficients(CoefficientFamily::laguerre(-6), 1);
    REQUIRE(e.size() == 2);
    CHECK(e[0] == Complex(-5, 0));
    CHECK(e[1] == Complex(-1, 0));
  }
  SUBCASE("against Faddeev-LeVerrier") {
    for (int n : {3, 6, 10}) {
      const Complex mu(1, 0.5), lambda(0.2, 0.3);
      const auto want = oracle::char_poly(oracle::gribov_matrix(mu, lambda, n));
      const auto got = char_poly_coefficients(CoefficientFamily::gribov(mu, lambda), n);
      REQUIRE(got.size() == want.size());
      double scale = 0;
      for (const auto& w : want) scale = std::max(scale, static_cast<double>(std::abs(w)));
      for (std::size_t j = 0; j < got.size(); ++j) CHECK(std::abs(got[j] - lc(want[j])) <= 1e-12 * scale);
      CHECK(got[static_cast<std::size_t>(n)] == Complex(n % 2 ? -1 : 1, 0));
    }
  }
  SUBCASE("coefficient evaluation agrees with the recurrence") {
    const auto f = CoefficientFamily::gribov(1.0, 0.3);
    for (int n : {5, 15, 30}) {
      const auto c = char_poly_coefficients(f, n);
      for (Complex z : {Complex(0.5, 0.1), Complex(n / 2.0, 1), Complex(n, -n)}) {
        Complex h = 0;
        for (std::size_t j = c.size(); j-- > 0;) h = h * z + c[j];
        const Complex v = eval_char_poly(f, n, z).value.to_complex();
        double absum = 0;
        for (std::size_t j = 0; j < c.size(); ++j) absum += std::abs(c[j]) * std::pow(std::abs(z), j);
        CHECK(std::abs(h - v) <= 1e-10 * std::max(std::abs(v), 1e-6 * absum));
      }
    }
  }
  CHECK_THROWS_AS(char_poly_coefficients(CoefficientFamily::gribov(1.0, 0.3), 65), Error);
  CHECK_NOTHROW(char_poly_coefficients(CoefficientFamily::gribov(1.0, 0.3), 64));
}

TEST_CASE("leading coefficient of P_{n+1}") {
  // a_n = 1 / (alpha_1 ... alpha_n): compare with P_{n+1}(z) / z^n for large z.
  const auto f = CoefficientFamily::gribov(1.0, 0.4);
  for (int n = 1; n <= 10; ++n) {
    Complex prod = 1;
    for (int k = 1; k <= n; ++k) prod *= family_coeffs(f, k).alpha;
    const auto c = char_poly_coefficients(f, n);
    // Ptilde_n = (-1)^n alpha_1..alpha_n P_{n+1}; leading of Ptilde_n is (-1)^n
    const Complex lead_p = c[static_cast<std::size_t>(n)] * std::pow(-1.0, n) / prod;
    CHECK(std::abs(lead_p - 1.0 / prod) <= 1e-14 * std::abs(1.0 / prod));
    const double big = 1e7;
    const Complex ratio = eval_P_sequence(f, n + 1, big).value(n + 1).to_complex() / std::pow(big, n);
    CHECK(std::abs(ratio - 1.0 / prod) <= 1e-5 * std::abs(1.0 / prod));
  }
}

TEST_CASE("P versus char poly identity") {
  CHECK(relate_P_to_charpoly(CoefficientFamily::gribov(1.0, 1.0), 2, 0.0) <= 1e-12);
  CHECK(relate_P_to_charpoly(CoefficientFamily::gribov(1.0, 0.1), 10, Complex(5, 2)) <= 1e-10);
  CHECK(relate_P_to_charpoly(CoefficientFamily::gribov(1.0, 0.1), 1, 1.0) == 0.0);
  CHECK(relate_P_to_charpoly(CoefficientFamily::gribov(1.0, 0.05), 150, Complex(140, 3)) <= 1e-10);
  CHECK_THROWS_AS(relate_P_to_charpoly(CoefficientFamily::gribov(1.0, 0.0), 3, 1.0), Error);
}

TEST_CASE("no overflow at large n") {
  const auto f = CoefficientFamily::gribov(1.0, 1.0);
  const auto v = eval_char_poly(f, 400, Complex(400, 0)).value;
  CHECK(std::isfinite(v.log2_abs()));
  CHECK(v.log2_abs() > 1024);
  const auto s = eval_P_sequence(f, 400, Complex(200, 5));
  CHECK(std::isfinite(s.value(400).log2_abs()));
}
