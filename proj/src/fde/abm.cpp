#include <algorithm>
#include <cmath>
#include <string>

#include "ffq/fde.hpp"
#include "ffq/fraccalc.hpp"

namespace ffq::fde {
namespace {

Trajectory integrate_classical(const FdeProblem& p, const AbmOptions& opts) {
  Trajectory traj;
  traj.h = p.h;
  traj.states.reserve(p.steps + 1);
  traj.states.push_back(p.psi0);
  CVector f_prev;
  CVector f_cur = p.rhs(0.0, p.psi0);
  for (std::size_t k = 0; k < p.steps; ++k) {
    const CVector& y = traj.states[k];
    const double t_next = traj.time(k + 1);
    CVector pred = k == 0 ? CVector(y + p.h * f_cur) : CVector(y + 0.5 * p.h * (3.0 * f_cur - f_prev));
    CVector next = pred;
    for (int it = 0; it < opts.corrector_iterations; ++it) next = y + 0.5 * p.h * (f_cur + p.rhs(t_next, next));
    f_prev = f_cur;
    f_cur = p.rhs(t_next, next);
    traj.states.push_back(std::move(next));
  }
  return traj;
}

Trajectory integrate_fractional(const FdeProblem& p, const AbmOptions& opts) {
  const double a = p.alpha;
  const std::size_t K = p.steps;
  const double pred_scale = std::pow(p.h, a) / std::tgamma(a + 1.0);
  const double corr_scale = std::pow(p.h, a) / std::tgamma(a + 2.0);

  // predictor weights (m+1)^a - m^a, m = k - j
  std::vector<double> b(K + 1);
  for (std::size_t m = 0; m <= K; ++m) b[m] = std::pow(m + 1.0, a) - std::pow(static_cast<double>(m), a);
  // interior corrector weights depend on m = k + 1 - j only; take them from the
  // product-trapezoidal rule at the final step
  const std::vector<double> w = fraccalc::product_trapezoid_weights(a, K + 1);
  const auto interior = [&](std::size_t m) { return w[K + 1 - m]; };

  Trajectory traj;
  traj.h = p.h;
  traj.states.reserve(K + 1);
  traj.states.push_back(p.psi0);
  std::vector<CVector> f;
  f.reserve(K + 1);
  f.push_back(p.rhs(0.0, p.psi0));

  const Eigen::Index d = p.psi0.size();
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t j_first = opts.history_window > 0 && k + 1 > opts.history_window ? k + 1 - opts.history_window : 0;
    const double kd = static_cast<double>(k);

    CVector pred_sum = CVector::Zero(d);
    CVector corr_sum = CVector::Zero(d);
    for (std::size_t j = j_first; j <= k; ++j) {
      pred_sum += b[k - j] * f[j];
      const double aw = j == 0 ? std::pow(kd, a + 1.0) - (kd - a) * std::pow(kd + 1.0, a) : interior(k + 1 - j);
      corr_sum += aw * f[j];
    }
    const double t_next = traj.time(k + 1);
    const CVector pred = p.psi0 + pred_scale * pred_sum;
    CVector next = pred;
    for (int it = 0; it < opts.corrector_iterations; ++it)
      next = p.psi0 + corr_scale * (corr_sum + p.rhs(t_next, next));
    f.push_back(p.rhs(t_next, next));
    traj.states.push_back(std::move(next));
  }
  return traj;
}

Trajectory integrate(const FdeProblem& p, const AbmOptions& opts) {
  return p.alpha == 1.0 ? integrate_classical(p, opts) : integrate_fractional(p, opts);
}

}  // namespace

void FdeProblem::validate() const {
  if (!rhs) throw DomainError("FdeProblem: right-hand side is not set");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("FdeProblem: alpha must lie in (0,1], got " + std::to_string(alpha));
  if (psi0.size() == 0) throw DomainError("FdeProblem: empty initial state");
  if (!(h > 0.0)) throw DomainError("FdeProblem: step must be positive");
  if (steps < 1) throw DomainError("FdeProblem: need at least one step");
}

AbmResult solve_ftse_direct(const FdeProblem& p, const AbmOptions& opts) {
  p.validate();
  if (opts.corrector_iterations < 1) throw DomainError("solve_ftse_direct: need at least one corrector iteration");
  AbmResult result;
  result.trajectory = integrate(p, opts);
  if (opts.check_step_halving) {
    FdeProblem fine = p;
    fine.h = 0.5 * p.h;
    fine.steps = 2 * p.steps;
    const Trajectory ref = integrate(fine, opts);
    result.halving_difference = (ref.states.back() - result.trajectory.states.back()).norm();
    result.stable = result.halving_difference <= 10.0 * opts.halving_tolerance;
  }
  return result;
}

Rhs schrodinger_rhs(std::function<CMatrix(double)> hamiltonian, double alpha, double hbar) {
  const cplx factor = -kI * std::pow(hbar, -alpha);
  return [hamiltonian = std::move(hamiltonian), factor](double t, const CVector& psi) -> CVector {
    return factor * (hamiltonian(t) * psi);
  };
}

}  // namespace ffq::fde
