#include <cmath>
#include <sstream>

#include "ffq/models.hpp"
#include "ffq/specfun.hpp"
#include "ffq/synthesis.hpp"

namespace ffq::models {

floquet::FourierHamiltonian toy_hamiltonian(const ToyModel& tm) {
  floquet::FourierHamiltonian H;
  H.omega = tm.omega;
  H.dim = 1;
  H.modes[1] = CMatrix::Constant(1, 1, 0.5 * tm.e0);
  H.modes[-1] = CMatrix::Constant(1, 1, 0.5 * tm.e0);
  return H;
}

floquet::FloquetSolution toy_coefficients(const ToyModel& tm, int N) {
  if (!(tm.hbar > 0.0 && tm.omega > 0.0)) throw DomainError("toy_coefficients: hbar and omega must be positive");
  const double z = tm.drive();
  if (N < 2.0 * std::abs(z))
    throw DomainError("toy_coefficients: truncation N must be at least 2 e0 / (hbar omega)");

  const std::vector<cplx> j = specfun::bessel_j_sequence(N + 60, z, {std::max(256, N + 60)});
  floquet::FloquetSolution sol;
  sol.epsilon = 0.0;
  sol.hbar = tm.hbar;
  sol.omega = tm.omega;
  sol.truncation = N;
  sol.n_lo = -N;
  for (int n = -N; n <= N; ++n) {
    // C_n = J_{-n}(z): (-1)^n J_n for n >= 0, and J_|n| for n < 0
    const int m = std::abs(n);
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    sol.coeffs.push_back(CVector::Constant(1, n >= 0 ? parity * j[m] : j[m]));
  }

  double tail = 0.0;
  for (int m = N + 1; m < static_cast<int>(j.size()); ++m) tail += 2.0 * std::norm(j[m]);
  if (tail > 1e-12) {
    std::ostringstream msg;
    msg << "toy_coefficients: Bessel mass beyond N = " << N << " is " << tail << " (> 1e-12)";
    sol.warnings.push_back(msg.str());
  }

  const double norm = std::sqrt(sol.norm_squared());
  for (CVector& c : sol.coeffs) c /= norm;
  sol.residual = floquet::lattice_eigen_residual(toy_hamiltonian(tm), sol);
  return sol;
}

cplx toy_fft_state(const ToyModel& tm, double alpha, int N, double t) {
  synthesis::FftParams p;
  p.alpha = alpha;
  p.hbar = tm.hbar;
  p.solution = toy_coefficients(tm, N);
  return synthesis::synthesize(p, t)[0];
}

cplx toy_classical_state(const ToyModel& tm, double t) {
  return std::exp(-kI * (tm.drive() * std::sin(tm.omega * t)));
}

}  // namespace ffq::models
