#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ffq/floquet.hpp"

namespace ffq::floquet {

double fold_quasienergy(double eps, double omega) {
  const double k = std::floor((eps + 0.5 * omega) / omega);
  double folded = eps - k * omega;
  // guard the half-open interval against rounding at its upper edge
  if (folded >= 0.5 * omega) folded -= omega;
  if (folded < -0.5 * omega) folded += omega;
  return folded;
}

void shift_zone(FloquetSolution& sol, int k) {
  sol.epsilon -= k * sol.omega;
  sol.n_lo -= k;
}

void fix_gauge(FloquetSolution& sol) {
  double biggest = 0.0;
  for (const CVector& c : sol.coeffs) biggest = std::max(biggest, c.cwiseAbs().maxCoeff());
  if (biggest == 0.0) return;
  // scan in (harmonic, basis) order; near-equal magnitudes count as ties
  const double threshold = biggest * (1.0 - 1e-12);
  for (CVector& c : sol.coeffs) {
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (std::abs(c[i]) >= threshold) {
        const double mag = std::abs(c[i]);
        const cplx phase = std::conj(c[i]) / mag;
        for (CVector& v : sol.coeffs) v *= phase;
        // drop the rounding left in the reference component
        c[i] = mag;
        return;
      }
    }
  }
}

std::vector<FloquetSolution> solve_quasienergies(const FloquetMatrix& F) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(F.matrix);
  if (eig.info() != Eigen::Success) throw ConvergenceError("solve_quasienergies: Hermitian eigensolve failed");

  const int N = F.truncation;
  const Eigen::Index d = F.dim;
  std::vector<FloquetSolution> out;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    const CVector v = eig.eigenvectors().col(k);
    double centroid = 0.0;
    for (int n = -N; n <= N; ++n) centroid += n * v.segment((n + N) * d, d).squaredNorm();
    centroid /= v.squaredNorm();
    if (centroid < -0.5 || centroid >= 0.5) continue;

    const double lambda = eig.eigenvalues()[k];
    FloquetSolution sol;
    sol.hbar = F.hbar;
    sol.omega = F.omega;
    sol.truncation = N;
    sol.epsilon = lambda / F.hbar;
    sol.n_lo = -N;
    sol.coeffs.reserve(2 * N + 1);
    const CVector unit = v / v.norm();
    for (int n = -N; n <= N; ++n) sol.coeffs.emplace_back(unit.segment((n + N) * d, d));
    sol.residual = (F.matrix * unit - lambda * unit).norm();

    const double folded = fold_quasienergy(sol.epsilon, sol.omega);
    shift_zone(sol, static_cast<int>(std::lround((sol.epsilon - folded) / sol.omega)));
    sol.epsilon = folded;
    fix_gauge(sol);
    out.push_back(std::move(sol));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FloquetSolution& a, const FloquetSolution& b) { return a.epsilon < b.epsilon; });
  return out;
}

}  // namespace ffq::floquet
