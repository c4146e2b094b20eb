#include <algorithm>
#include <cmath>

#include "ffq/fraccalc.hpp"
#include "ffq/synthesis.hpp"

namespace ffq::synthesis {

double ftse_residual(const Trajectory& traj, const floquet::FourierHamiltonian& H, double alpha, double hbar,
                     const ResidualOptions& opts) {
  if (traj.size() < 5) throw DomainError("ftse_residual: need at least 5 grid points");
  if (traj.t0 != 0.0) throw DomainError("ftse_residual: trajectory must start at t = 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ftse_residual: alpha must lie in (0,1]");

  double scale = 0.0;
  for (const CVector& s : traj.states) scale = std::max(scale, s.norm());
  if (scale == 0.0) return 0.0;

  const std::size_t n = traj.size();
  const double h = traj.h;
  double worst = 0.0;
  if (alpha == 1.0) {
    for (std::size_t k = 2; k + 2 < n; ++k) {
      const CVector d = (-traj.states[k + 2] + 8.0 * traj.states[k + 1] - 8.0 * traj.states[k - 1] +
                         traj.states[k - 2]) /
                        (12.0 * h);
      const CVector r = kI * hbar * d - H.at(traj.time(k)) * traj.states[k];
      worst = std::max(worst, r.norm());
    }
    return worst / scale;
  }

  const double skip = opts.skip_time >= 0.0 ? opts.skip_time : 0.1 * H.period();
  const std::vector<CVector> d = fraccalc::caputo_l1(traj.states, h, alpha);
  const double ha = std::pow(hbar, alpha);
  for (std::size_t k = 1; k < n; ++k) {
    const double t = traj.time(k);
    if (t < skip) continue;
    const CVector r = kI * ha * d[k] - H.at(t) * traj.states[k];
    worst = std::max(worst, r.norm());
  }
  return worst / scale;
}

}  // namespace ffq::synthesis
