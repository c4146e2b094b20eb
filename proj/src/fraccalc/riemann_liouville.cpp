#include <algorithm>
#include <cmath>
#include <string>

#include "ffq/fraccalc.hpp"
#include "ffq/specfun.hpp"

namespace ffq::fraccalc {

std::vector<double> product_trapezoid_weights(double nu, std::size_t k) {
  std::vector<double> a(k + 1);
  const double p = nu + 1.0;
  const auto pw = [p](double x) { return std::pow(x, p); };
  const double kd = static_cast<double>(k);
  if (k == 0) {
    a[0] = 0.0;
    return a;
  }
  a[0] = pw(kd - 1.0) - (kd - nu - 1.0) * std::pow(kd, nu);
  for (std::size_t j = 1; j < k; ++j) {
    const double m = static_cast<double>(k - j);
    a[j] = pw(m + 1.0) + pw(m - 1.0) - 2.0 * pw(m);
  }
  a[k] = 1.0;
  return a;
}

UniformGridFn rl_integral(const UniformGridFn& f, double nu) {
  if (!(nu > 0.0 && nu <= 1.0))
    throw DomainError("rl_integral: order must lie in (0,1], got " + std::to_string(nu));
  if (f.size() < 3) throw DomainError("rl_integral: need at least 3 samples");
  if (!(f.h > 0.0)) throw DomainError("rl_integral: step must be positive");

  const std::size_t n = f.size();
  const double scale = std::pow(f.h, nu) / std::tgamma(nu + 2.0);
  UniformGridFn out{f.t0, f.h, std::vector<cplx>(n, cplx(0.0)), 0};
  for (std::size_t k = 1; k < n; ++k) {
    const std::vector<double> a = product_trapezoid_weights(nu, k);
    cplx acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += a[j] * f.values[j];
    out.values[k] = scale * acc;
  }
  return out;
}

ExponentialIdentityReport caputo_of_exponential_identity(double l_bar, double mu, double h, double t_min,
                                                         double t_max) {
  if (l_bar == 0.0) throw DomainError("caputo_of_exponential_identity: l_bar = 0 carries no oscillatory part");
  if (!(t_min > 0.0 && t_max > t_min)) throw DomainError("caputo_of_exponential_identity: need 0 < t_min < t_max");

  ExponentialIdentityReport rep;
  rep.l_bar = l_bar;
  rep.mu = mu;
  rep.h = h;
  rep.t_min = t_min;
  rep.t_max = t_max;

  const auto count = static_cast<std::size_t>(std::llround(t_max / h)) + 1;
  const UniformGridFn f = sample([l_bar](double t) { return std::exp(kI * l_bar * t); }, 0.0, h, count);
  const UniformGridFn cap = caputo_l1(f, mu);
  const UniformGridFn rld = rl_derivative_l1(f, mu);
  const UniformGridFn integral = rl_integral(f, mu);

  for (std::size_t k = 1; k < count; ++k) {
    const double t = f.time(k);
    if (t < t_min - 1e-12 * t_min) continue;
    const cplx arg = kI * l_bar * t;
    const cplx target = std::pow(t, -mu) * specfun::mittag_leffler(1.0, 1.0 - mu, arg);
    const cplx laplace = std::pow(t, mu) * specfun::mittag_leffler(1.0, 1.0 + mu, arg);
    rep.caputo_vs_target = std::max(rep.caputo_vs_target, std::abs(cap.values[k] - target));
    rep.rl_derivative_vs_target = std::max(rep.rl_derivative_vs_target, std::abs(rld.values[k] - target));
    rep.rl_integral_vs_laplace = std::max(rep.rl_integral_vs_laplace, std::abs(integral.values[k] - laplace));
    rep.rl_integral_vs_target = std::max(rep.rl_integral_vs_target, std::abs(integral.values[k] - target));
  }
  return rep;
}

}  // namespace ffq::fraccalc
