#include <cmath>
#include <string>

#include "ffq/specfun.hpp"
#include "ffq/synthesis.hpp"

namespace ffq::synthesis {

void FftParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("FftParams: alpha must lie in (0,1], got " + std::to_string(alpha));
  if (!(hbar > 0.0)) throw DomainError("FftParams: hbar must be positive");
  if (!(solution.omega > 0.0)) throw DomainError("FftParams: omega must be positive");
  if (solution.coeffs.empty()) throw DomainError("FftParams: solution has no coefficients");
}

double FftParams::rate(int n) const {
  return std::pow(hbar, 1.0 - alpha) * (solution.omega * n - solution.epsilon);
}

CVector synthesize(const FftParams& p, double t) {
  p.validate();
  if (t < 0.0) throw DomainError("synthesize: t must be non-negative");
  const floquet::FloquetSolution& sol = p.solution;
  const double ta = std::pow(t, p.alpha);
  CVector psi = CVector::Zero(sol.dim());
  for (std::size_t i = 0; i < sol.coeffs.size(); ++i) {
    const int n = sol.n_lo + static_cast<int>(i);
    psi += specfun::mittag_leffler(p.alpha, kI * (p.rate(n) * ta)) * sol.coeffs[i];
  }
  return psi;
}

Trajectory synthesize_trajectory(const FftParams& p, double h, std::size_t steps) {
  if (!(h > 0.0)) throw DomainError("synthesize_trajectory: step must be positive");
  Trajectory traj;
  traj.t0 = 0.0;
  traj.h = h;
  traj.states.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) traj.states.push_back(synthesize(p, traj.time(k)));
  return traj;
}

}  // namespace ffq::synthesis
