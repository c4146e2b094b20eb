#include <array>
#include <cmath>
#include <string>

#include "ffq/fraccalc.hpp"

namespace ffq::fraccalc {
namespace {

constexpr int kGaussPoints = 16;

struct GaussRule {
  std::array<double, kGaussPoints> x{};
  std::array<double, kGaussPoints> w{};
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
GaussRule make_gauss_rule() {
  GaussRule rule;
  const int n = kGaussPoints;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

}  // namespace

cplx PeriodicModes::operator()(double x) const {
  cplx sum = 0.0;
  for (const auto& [l, g] : modes) sum += g * std::exp(kI * wavenumber(l) * x);
  return sum;
}

PeriodicModes riesz_feller_periodic(const PeriodicModes& g, double mu) {
  if (!(mu > 0.0 && mu <= 2.0)) throw DomainError("riesz_feller_periodic: mu must lie in (0,2]");
  if (!(g.period > 0.0)) throw DomainError("riesz_feller_periodic: period must be positive");
  PeriodicModes out;
  out.period = g.period;
  for (const auto& [l, amp] : g.modes) out.modes[l] = -std::pow(std::abs(g.wavenumber(l)), mu) * amp;
  return out;
}

cplx grunwald_letnikov_symmetric(const std::function<cplx(double)>& f, double mu, double x,
                                 const GlQuadratureConfig& cfg) {
  if (!(mu > 0.0 && mu < 2.0)) throw DomainError("grunwald_letnikov_symmetric: mu must lie in (0,2)");
  if (mu == 1.0)
    throw DomainError("grunwald_letnikov_symmetric: mu = 1 makes the prefactor singular (cos(pi/2) = 0)");
  if (!(cfg.step > 0.0 && cfg.cutoff > cfg.step))
    throw DomainError("grunwald_letnikov_symmetric: need 0 < step < cutoff");

  const cplx fx = f(x);
  const auto bracket = [&](double y) { return f(x + y) - 2.0 * fx + f(x - y); };

  // (0, step): bracket ~ f''(x) y^2, so the integrand ~ f'' y^{1-mu}
  const double s = cfg.step;
  const cplx f2 = bracket(s) / (s * s);
  cplx integral = f2 * std::pow(s, 2.0 - mu) / (2.0 - mu);

  // (step, cutoff): panels doubling in width up to max_width, then uniform.
  // Over the outer half the mean of f(x+y) + f(x-y) is recorded for the tail.
  const double max_width = 0.5;
  const GaussRule& g = gauss_rule();
  double a = s;
  double width = s;
  cplx far_sum = 0.0;
  double far_length = 0.0;
  while (a < cfg.cutoff) {
    const double b = std::min(a + width, cfg.cutoff);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    cplx panel = 0.0;
    cplx pair_sum = 0.0;
    for (int i = 0; i < kGaussPoints; ++i) {
      const double y = mid + half * g.x[i];
      const cplx pair = f(x + y) + f(x - y);
      panel += g.w[i] * (pair - 2.0 * fx) * std::pow(y, -1.0 - mu);
      pair_sum += g.w[i] * pair;
    }
    integral += half * panel;
    if (a >= 0.5 * cfg.cutoff) {
      far_sum += half * pair_sum;
      far_length += b - a;
    }
    a = b;
    width = std::min(2.0 * width, max_width);
  }

  // beyond cutoff the pair is replaced by its far-field mean, which vanishes
  // for oscillating f and equals 2 f for constants
  const cplx far_mean = far_length > 0.0 ? far_sum / far_length : 2.0 * fx;
  integral += (far_mean - 2.0 * fx) * std::pow(cfg.cutoff, -mu) / mu;

  const double prefactor = mu / (2.0 * std::tgamma(1.0 - mu) * std::cos(mu * kPi / 2.0));
  return prefactor * integral;
}

}  // namespace ffq::fraccalc
