#include <doctest.h>

#include <cmath>

#include "../support/gen.hpp"
#include "ffq/fraccalc.hpp"
#include "ffq/specfun.hpp"

using namespace ffq;
using namespace ffq::fraccalc;

namespace {

double max_dev(const UniformGridFn& g, const std::function<cplx(double)>& want, double t_min = 0.0) {
  double m = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.defined(k) && g.time(k) >= t_min - 1e-12) m = std::max(m, std::abs(g.values[k] - want(g.time(k))));
  return m;
}

double l1_error(const std::function<cplx(double)>& f, const std::function<cplx(double)>& d, double alpha, double h) {
  const auto count = static_cast<std::size_t>(std::llround(1.0 / h)) + 1;
  return max_dev(caputo_l1(sample(f, 0.0, h, count), alpha), d, 0.1);
}

}  // namespace

TEST_CASE("caputo_l1 annihilates constants and is exact on linear functions") {
  const UniformGridFn c = caputo_l1(sample([](double) { return cplx(7.0); }, 0.0, 0.01, 101), 0.6);
  CHECK_FALSE(c.defined(0));
  CHECK(max_dev(c, [](double) { return cplx(0.0); }) == 0.0);
  const UniformGridFn d = caputo_l1(sample([](double t) { return cplx(t); }, 0.0, 0.01, 101), 0.5);
  CHECK(max_dev(d, [](double t) { return cplx(std::sqrt(t) / std::tgamma(1.5)); }) < 1e-13);
  CHECK(std::sqrt(1.0) / std::tgamma(1.5) == doctest::Approx(1.128379).epsilon(1e-6));
}

TEST_CASE("caputo_l1 reproduces the eigenfunction property of E_a(i t^a)") {
  const double a = 0.7;
  const auto f = [a](double t) { return specfun::mittag_leffler(a, kI * std::pow(t, a)); };
  const auto d = [&](double t) { return kI * f(t); };
  const double e1 = l1_error(f, d, a, 0.01);
  const double e2 = l1_error(f, d, a, 0.005);
  CHECK(e2 < 3e-3);
  CHECK(std::log2(e1 / e2) > 1.2);
}

TEST_CASE("caputo_l1 converges at order 2 - alpha on t^2") {
  const double a = 0.7;
  const auto f = [](double t) { return cplx(t * t); };
  const auto d = [a](double t) { return cplx(2.0 * std::pow(t, 2.0 - a) / std::tgamma(3.0 - a)); };
  const double e1 = l1_error(f, d, a, 0.01);
  const double e2 = l1_error(f, d, a, 0.005);
  const double e3 = l1_error(f, d, a, 0.0025);
  CHECK(e1 / e2 >= std::pow(2.0, 1.2));
  CHECK(e2 / e3 >= std::pow(2.0, 1.2));
}

TEST_CASE("caputo_l1 destroys periodicity of e^{ilt}") {
  const double l = 2.0 * kPi;
  const double a = 0.5;
  const double T = 1.0;
  const double h = 1e-3;
  const UniformGridFn d = caputo_l1(sample([l](double t) { return std::exp(kI * (l * t)); }, 0.0, h, 2001), a);
  double dev = 0.0;
  for (std::size_t k = 1; k <= 200; ++k) dev = std::max(dev, std::abs(d.values[k + 1000] - d.values[k]));
  CHECK(dev > 0.1 * std::pow(l, a));
}

TEST_CASE("fractional operators are linear") {
  testgen::Gen g(201);
  for (int i = 0; i < 10; ++i) {
    const cplx A(g.uniform(-2, 2), g.uniform(-2, 2));
    const cplx B(g.uniform(-2, 2), g.uniform(-2, 2));
    const double w1 = g.uniform(0.5, 5.0);
    const double w2 = g.uniform(0.5, 5.0);
    const double a = g.uniform(0.1, 0.9);
    const auto f1 = [w1](double t) { return std::exp(kI * (w1 * t)); };
    const auto f2 = [w2](double t) { return cplx(std::cos(w2 * t), t * t); };
    const auto fs = [&](double t) { return A * f1(t) + B * f2(t); };
    const UniformGridFn s1 = sample(f1, 0.0, 0.01, 101);
    const UniformGridFn s2 = sample(f2, 0.0, 0.01, 101);
    const UniformGridFn ss = sample(fs, 0.0, 0.01, 101);
    const UniformGridFn c1 = caputo_l1(s1, a), c2 = caputo_l1(s2, a), cs = caputo_l1(ss, a);
    const UniformGridFn i1 = rl_integral(s1, a), i2 = rl_integral(s2, a), is = rl_integral(ss, a);
    double dc = 0.0;
    double di = 0.0;
    for (std::size_t k = 1; k < ss.size(); ++k) {
      dc = std::max(dc, std::abs(cs.values[k] - A * c1.values[k] - B * c2.values[k]));
      di = std::max(di, std::abs(is.values[k] - A * i1.values[k] - B * i2.values[k]));
    }
    CHECK(dc < 1e-11);
    CHECK(di < 1e-12);
  }
}

TEST_CASE("rl_integral closed forms") {
  const UniformGridFn one = rl_integral(sample([](double) { return cplx(1.0); }, 0.0, 0.01, 201), 0.5);
  CHECK(max_dev(one, [](double t) { return cplx(std::sqrt(t) / std::tgamma(1.5)); }) < 1e-12);
  const UniformGridFn lin = rl_integral(sample([](double t) { return cplx(t); }, 0.0, 0.01, 201), 1.0);
  CHECK(max_dev(lin, [](double t) { return cplx(0.5 * t * t); }) < 1e-13);

  const double l = 2.0 * kPi;
  const double nu = 0.4;
  const UniformGridFn e = rl_integral(sample([l](double t) { return std::exp(kI * (l * t)); }, 0.0, 1e-3, 2001), nu);
  const auto want = [&](double t) { return std::pow(t, nu) * specfun::mittag_leffler(1.0, 1.0 + nu, kI * (l * t)); };
  CHECK(max_dev(e, want) < 1e-5);
}

TEST_CASE("rl_integral semigroup I^0.3 I^0.4 = I^0.7") {
  // f(0) = f'(0) = 0 keeps I^0.4 f smooth enough for the second pass
  const auto f = [](double t) { return cplx(t * t * std::cos(3.0 * t), t * t * t); };
  const UniformGridFn s = sample(f, 0.0, 1e-3, 1001);
  const UniformGridFn twice = rl_integral(rl_integral(s, 0.4), 0.3);
  const UniformGridFn once = rl_integral(s, 0.7);
  double dev = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) dev = std::max(dev, std::abs(twice.values[k] - once.values[k]));
  CHECK(dev < 1e-5);
}

TEST_CASE("product_trapezoid_weights integrate constants exactly") {
  testgen::Gen g(202);
  for (int i = 0; i < testgen::kCases; ++i) {
    const double nu = g.uniform(0.05, 1.0);
    const auto k = static_cast<std::size_t>(g.integer(1, 400));
    const std::vector<double> w = product_trapezoid_weights(nu, k);
    REQUIRE(w.size() == k + 1);
    double sum = 0.0;
    for (double x : w) sum += x;
    CHECK(sum == doctest::Approx((nu + 1.0) * std::pow(static_cast<double>(k), nu)).epsilon(1e-12));
  }
}

TEST_CASE("exponential identity: the target is the Riemann-Liouville derivative") {
  const ExponentialIdentityReport r = caputo_of_exponential_identity(2.0 * kPi, 0.5, 1e-3, 0.1, 2.0);
  CHECK(r.rl_derivative_vs_target < 1e-3);
  CHECK(r.rl_integral_vs_laplace < 1e-5);
  // the Caputo value misses exactly the boundary term t^{-mu}/Gamma(1-mu), largest at t = 0.1
  CHECK(r.caputo_vs_target == doctest::Approx(std::pow(0.1, -0.5) / std::tgamma(0.5)).epsilon(1e-3));
  const ExponentialIdentityReport small = caputo_of_exponential_identity(2.0 * kPi, 0.05, 1e-3, 0.1, 2.0);
  CHECK(small.rl_derivative_vs_target < r.rl_derivative_vs_target);
  CHECK_THROWS_AS(caputo_of_exponential_identity(0.0, 0.5, 1e-3, 0.1, 2.0), DomainError);
}

TEST_CASE("riesz_feller_periodic multiplier") {
  PeriodicModes g;
  g.period = 4.0;
  g.modes = {{0, 1.5}, {1, cplx(0.5, 0.2)}, {-3, 2.0}};
  const PeriodicModes r = riesz_feller_periodic(g, 2.0);
  REQUIRE(r.modes.size() == g.modes.size());
  CHECK(std::abs(r.modes.at(0)) == 0.0);
  for (int l : {1, -3}) {
    const double k = g.wavenumber(l);
    CHECK(std::abs(r.modes.at(l) + k * k * g.modes.at(l)) < 1e-14);
  }
  const PeriodicModes h = riesz_feller_periodic(g, 0.7);
  CHECK(std::abs(h.modes.at(-3) + std::pow(std::abs(g.wavenumber(-3)), 0.7) * 2.0) < 1e-14);
  CHECK_THROWS_AS(riesz_feller_periodic(g, 2.5), DomainError);
}

TEST_CASE("grunwald_letnikov_symmetric matches the Fourier multiplier") {
  CHECK(std::abs(grunwald_letnikov_symmetric([](double) { return cplx(3.0); }, 0.5, 0.4)) < 1e-12);
  const double x = 0.7;
  const auto wave = [](double y) { return std::exp(kI * y); };
  CHECK(std::abs(grunwald_letnikov_symmetric(wave, 0.5, x) / wave(x) + 1.0) < 1e-6);
  const double l = 2.0;
  const auto c = [l](double y) { return cplx(std::cos(l * y)); };
  CHECK(std::abs(grunwald_letnikov_symmetric(c, 1.5, x) + std::pow(l, 1.5) * c(x)) < 1e-6 * std::pow(l, 1.5));
  CHECK_THROWS_AS(grunwald_letnikov_symmetric(wave, 1.0, x), DomainError);
  CHECK_THROWS_AS(grunwald_letnikov_symmetric(wave, 2.0, x), DomainError);
}
