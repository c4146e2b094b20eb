#include <doctest.h>

#include <cmath>

#include "../oracles/frozen_values.hpp"
#include "../support/gen.hpp"
#include "ffq/specfun.hpp"

using namespace ffq;
using specfun::mittag_leffler;

namespace {

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

TEST_CASE("mittag_leffler matches the extended-precision oracle table") {
  int overflow_cases = 0;
  for (const auto& c : ffq_oracle::kMlfCases) {
    CAPTURE(c.alpha);
    CAPTURE(c.beta);
    CAPTURE(c.z_re);
    CAPTURE(c.z_im);
    const cplx z(c.z_re, c.z_im);
    if (std::isinf(c.re)) {
      ++overflow_cases;
      CHECK_THROWS_AS((void)mittag_leffler(c.alpha, c.beta, z), OverflowError);
      continue;
    }
    const cplx want(c.re, c.im);
    // values near zero are compared on an absolute scale
    CHECK(std::abs(mittag_leffler(c.alpha, c.beta, z) - want) <= 1e-10 * std::max(std::abs(want), 1e-3));
  }
  CHECK(overflow_cases > 0);
}

TEST_CASE("mittag_leffler special values") {
  CHECK(mittag_leffler(1.0, 1.0, 1.0).real() == doctest::Approx(2.718281828459045).epsilon(1e-15));
  CHECK(std::abs(mittag_leffler(2.0, 1.0, -kPi * kPi) - cplx(-1.0)) < 1e-12);
  CHECK(std::abs(mittag_leffler(0.7, 1.3, 0.0) - 1.0 / std::tgamma(1.3)) < 1e-15);
  // brute-force series: E_{0.5}(0.3) = e^{0.09} erfc(-0.3)
  CHECK(std::abs(mittag_leffler(0.5, 1.0, 0.3) - std::exp(0.09) * std::erfc(-0.3)) < 1e-12);
  // E_{1,2}(z) = (e^z - 1)/z
  CHECK(rel_err(mittag_leffler(1.0, 2.0, cplx(3.0, -2.0)), (std::exp(cplx(3.0, -2.0)) - 1.0) / cplx(3.0, -2.0)) < 1e-12);
}

TEST_CASE("mittag_leffler reductions to elementary functions") {
  testgen::Gen g(101);
  for (int i = 0; i < 100; ++i) {
    const cplx z = g.complex_in_disk(10.0);
    CHECK(std::abs(mittag_leffler(1.0, 1.0, z) - std::exp(z)) < 1e-10);
  }
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.05 * i;
    CHECK(std::abs(mittag_leffler(2.0, 1.0, -x * x) - std::cos(x)) < 1e-10);
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    CHECK(std::abs(mittag_leffler(2.0, 2.0, -x * x) - sinc) < 1e-10);
  }
}

TEST_CASE("mittag_leffler of a real argument is real") {
  testgen::Gen g(102);
  for (int i = 0; i < testgen::kCases; ++i) {
    const double a = g.uniform(0.3, 1.0);
    const double b = g.uniform(0.5, 2.0);
    const double x = g.uniform(-50.0, 5.0);
    CHECK(mittag_leffler(a, b, x).imag() == 0.0);
  }
}

TEST_CASE("mittag_leffler rejects invalid input") {
  CHECK_THROWS_AS((void)mittag_leffler(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS((void)mittag_leffler(2.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS((void)mittag_leffler(0.5, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS((void)mittag_leffler(0.5, 1.0, cplx(NAN, 0.0)), DomainError);
  CHECK_THROWS_AS((void)mittag_leffler(0.5, 1.0, 1e11), DomainError);
  CHECK_THROWS_AS((void)mittag_leffler(1.0, 1.0, 800.0), OverflowError);
}

TEST_CASE("mittag_leffler evaluation routes agree where they overlap") {
  testgen::Gen g(103);
  for (int i = 0; i < testgen::kCases; ++i) {
    const double a = g.uniform(0.3, 1.0);
    const double b = g.uniform(0.5, 1.5);
    const cplx z = std::polar(1.0, g.uniform(-kPi, kPi));
    CHECK(rel_err(specfun::detail::mlf_contour(a, b, z), specfun::detail::mlf_series(a, b, z)) < 1e-12);
  }
  for (int i = 0; i < testgen::kCases; ++i) {
    const double a = g.uniform(0.3, 0.9);
    const double b = g.uniform(0.5, 1.5);
    // sectors where the pole contribution decays; elsewhere the value overflows
    const double theta = g.uniform(0.5 * a * kPi + 0.1, kPi) * (g.uniform(-1.0, 1.0) < 0.0 ? -1.0 : 1.0);
    const cplx z = std::polar(g.uniform(1e3, 3e3), theta);
    const cplx s = specfun::detail::mlf_asymptotic(a, b, z);
    // the contour keeps absolute accuracy, so tiny values are compared on a floor
    CHECK(std::abs(specfun::detail::mlf_contour(a, b, z) - s) <= 1e-9 * std::max(std::abs(s), 1e-3));
  }
}

TEST_CASE("mittag_leffler recurrence E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b)") {
  testgen::Gen g(104);
  for (int i = 0; i < testgen::kCases; ++i) {
    const double a = g.uniform(0.4, 1.0);
    const double b = g.uniform(0.5, 2.0);
    const cplx z = g.complex_in_disk(8.0);
    const cplx lhs = mittag_leffler(a, b, z);
    const cplx rhs = z * mittag_leffler(a, a + b, z) + 1.0 / std::tgamma(b);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("even and odd split E_a(-i z t^a) = E_2a(-z^2 t^2a) - i z t^a E_{2a,1+a}(-z^2 t^2a)") {
  for (double a : {0.3, 0.5, 0.8})
    for (double z : {0.2, 1.0, 3.0})
      for (double t : {0.5, 1.0, 2.0}) {
        const double s = z * std::pow(t, a);
        const cplx lhs = mittag_leffler(a, -kI * s);
        const cplx rhs = mittag_leffler(2.0 * a, 1.0, -s * s) - kI * s * mittag_leffler(2.0 * a, 1.0 + a, -s * s);
        CHECK(std::abs(lhs - rhs) < 1e-9);
      }
}

TEST_CASE("bessel_j matches the oracle table") {
  for (const auto& c : ffq_oracle::kBesselCases) {
    CAPTURE(c.n);
    CAPTURE(c.z_re);
    CAPTURE(c.z_im);
    const cplx want(c.re, c.im);
    CHECK(std::abs(specfun::bessel_j(c.n, {c.z_re, c.z_im}) - want) <= 1e-12 * std::max(std::abs(want), 1e-3));
  }
}

TEST_CASE("bessel_j special values and small argument") {
  CHECK(specfun::bessel_j(0, 0.0) == cplx(1.0));
  CHECK(specfun::bessel_j(5, 0.0) == cplx(0.0));
  const double z = 0.01;
  CHECK(std::abs(specfun::bessel_j(1, z) - (z / 2.0 - z * z * z / 16.0)) < 1e-12);
  const std::vector<cplx> j = specfun::bessel_j_sequence(5, 2.0);
  CHECK(std::abs(2.0 * j[4] + 2.0 * j[2] - 6.0 * j[3]) < 1e-12);
  CHECK_THROWS_AS((void)specfun::bessel_j(300, 1.0), DomainError);
}

TEST_CASE("bessel_j reflection, recurrence and Parseval") {
  for (double z : {0.5, 1.0, 2.0, 5.0}) {
    for (int n = 1; n <= 20; ++n) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(specfun::bessel_j(-n, z) == sign * specfun::bessel_j(n, z));
    }
    for (int n = -19; n <= 19; ++n) {
      const cplx r = z * (specfun::bessel_j(n + 1, z) + specfun::bessel_j(n - 1, z)) - 2.0 * n * specfun::bessel_j(n, z);
      CHECK(std::abs(r) < 1e-12);
    }
    double sum = 0.0;
    for (int n = -40; n <= 40; ++n) sum += std::norm(specfun::bessel_j(n, z));
    CHECK(std::abs(sum - 1.0) < 1e-10);
  }
}

TEST_CASE("bessel_j generating function e^{i z sin theta} = sum J_n(z) e^{i n theta}") {
  testgen::Gen g(105);
  for (int i = 0; i < testgen::kCases; ++i) {
    const cplx z = g.complex_in_disk(6.0);
    const double th = g.uniform(-kPi, kPi);
    const std::vector<cplx> j = specfun::bessel_j_sequence(60, z);
    cplx sum = j[0];
    for (int n = 1; n <= 60; ++n) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      sum += j[n] * (std::exp(kI * (n * th)) + sign * std::exp(-kI * (n * th)));
    }
    CHECK(std::abs(sum - std::exp(kI * z * std::sin(th))) < 1e-11 * std::max(1.0, std::abs(sum)));
  }
}
