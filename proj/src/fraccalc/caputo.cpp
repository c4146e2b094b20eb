#include <cmath>
#include <string>

#include "ffq/fraccalc.hpp"

namespace ffq::fraccalc {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("caputo_l1: order must lie in (0,1), got " + std::to_string(alpha));
}

}  // namespace

UniformGridFn sample(const std::function<cplx(double)>& f, double t0, double h, std::size_t count) {
  UniformGridFn out;
  out.t0 = t0;
  out.h = h;
  out.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) out.values[k] = f(out.time(k));
  return out;
}

std::vector<double> l1_weights(double alpha, std::size_t count) {
  std::vector<double> b(count);
  const double p = 1.0 - alpha;
  double prev = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const double next = std::pow(static_cast<double>(m + 1), p);
    b[m] = next - prev;
    prev = next;
  }
  return b;
}

UniformGridFn caputo_l1(const UniformGridFn& f, double alpha) {
  check_alpha(alpha);
  if (f.size() < 3) throw DomainError("caputo_l1: need at least 3 samples");
  if (!(f.h > 0.0)) throw DomainError("caputo_l1: step must be positive");

  const std::size_t n = f.size();
  const std::vector<double> b = l1_weights(alpha, n);
  std::vector<cplx> diff(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) diff[j] = f.values[j + 1] - f.values[j];

  const double scale = std::pow(f.h, -alpha) / std::tgamma(2.0 - alpha);
  UniformGridFn out{f.t0, f.h, std::vector<cplx>(n, cplx(0.0)), 1};
  for (std::size_t k = 1; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) acc += b[k - j - 1] * diff[j];
    out.values[k] = scale * acc;
  }
  return out;
}

std::vector<CVector> caputo_l1(const std::vector<CVector>& states, double h, double alpha) {
  check_alpha(alpha);
  if (states.size() < 3) throw DomainError("caputo_l1: need at least 3 samples");
  const std::size_t n = states.size();
  const std::vector<double> b = l1_weights(alpha, n);
  std::vector<CVector> diff(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) diff[j] = states[j + 1] - states[j];

  const double scale = std::pow(h, -alpha) / std::tgamma(2.0 - alpha);
  std::vector<CVector> out(n, CVector::Zero(states.front().size()));
  for (std::size_t k = 1; k < n; ++k) {
    CVector acc = CVector::Zero(states.front().size());
    for (std::size_t j = 0; j < k; ++j) acc += b[k - j - 1] * diff[j];
    out[k] = scale * acc;
  }
  return out;
}

UniformGridFn rl_derivative_l1(const UniformGridFn& f, double mu) {
  UniformGridFn out = caputo_l1(f, mu);
  const double g = std::tgamma(1.0 - mu);
  for (std::size_t k = 1; k < out.size(); ++k)
    out.values[k] += f.values[0] * std::pow(out.time(k) - f.t0, -mu) / g;
  return out;
}

}  // namespace ffq::fraccalc
