#include <algorithm>
#include <cmath>
#include <string>

#include "ffq/floquet.hpp"

namespace ffq::floquet {

int FourierHamiltonian::max_mode() const {
  int m = 0;
  for (const auto& [k, block] : modes) m = std::max(m, std::abs(k));
  return m;
}

CMatrix FourierHamiltonian::at(double t) const {
  CMatrix h = CMatrix::Zero(dim, dim);
  for (const auto& [m, block] : modes) h += block * std::exp(kI * (omega * m * t));
  return h;
}

double FourierHamiltonian::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& [m, block] : modes) {
    const auto partner = modes.find(-m);
    const CMatrix other = partner == modes.end() ? CMatrix::Zero(dim, dim) : partner->second;
    worst = std::max(worst, (block - other.adjoint()).norm());
  }
  return worst;
}

void FourierHamiltonian::validate() const {
  if (!(omega > 0.0)) throw DomainError("FourierHamiltonian: omega must be positive");
  if (dim < 1) throw DomainError("FourierHamiltonian: dimension must be positive");
  for (const auto& [m, block] : modes) {
    if (block.rows() != dim || block.cols() != dim)
      throw DomainError("FourierHamiltonian: mode " + std::to_string(m) + " has the wrong shape");
  }
  double scale = 1.0;
  for (const auto& [m, block] : modes) scale = std::max(scale, block.norm());
  if (hermiticity_defect() > 1e-12 * scale) throw DomainError("FourierHamiltonian: h(-m) must equal h(m)^dagger");
}

CVector FloquetSolution::coeff(int n) const {
  if (n < n_lo || n > n_hi()) return CVector::Zero(dim());
  return coeffs[static_cast<std::size_t>(n - n_lo)];
}

CVector FloquetSolution::periodic_part(double t) const {
  CVector u = CVector::Zero(dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int n = n_lo + static_cast<int>(i);
    u += coeffs[i] * std::exp(kI * (omega * n * t));
  }
  return u;
}

CVector FloquetSolution::state(double t) const { return std::exp(-kI * (epsilon * t)) * periodic_part(t); }

double FloquetSolution::norm_squared() const {
  double s = 0.0;
  for (const CVector& c : coeffs) s += c.squaredNorm();
  return s;
}

int default_truncation(const FourierHamiltonian& H, double hbar) {
  double drive = 0.0;
  for (const auto& [m, block] : H.modes)
    if (m != 0) drive += block.operatorNorm();
  return std::max(32, 4 * static_cast<int>(std::ceil(drive / (hbar * H.omega))) + H.max_mode());
}

FloquetMatrix build_floquet_matrix(const FourierHamiltonian& H, int N, double hbar) {
  H.validate();
  if (!(hbar > 0.0)) throw DomainError("build_floquet_matrix: hbar must be positive");
  if (N < H.max_mode())
    throw DomainError("build_floquet_matrix: truncation N = " + std::to_string(N) +
                      " is smaller than the highest Fourier mode " + std::to_string(H.max_mode()));

  const Eigen::Index d = H.dim;
  const Eigen::Index blocks = 2 * N + 1;
  FloquetMatrix F;
  F.truncation = N;
  F.dim = d;
  F.hbar = hbar;
  F.omega = H.omega;
  F.matrix = CMatrix::Zero(blocks * d, blocks * d);
  for (int n = -N; n <= N; ++n) {
    const Eigen::Index row = (n + N) * d;
    for (const auto& [m, block] : H.modes) {
      const int np = n - m;
      if (np < -N || np > N) continue;
      F.matrix.block(row, (np + N) * d, d, d) += block;
    }
    F.matrix.block(row, row, d, d).diagonal().array() += hbar * H.omega * n;
  }
  return F;
}

double lattice_eigen_residual(const FourierHamiltonian& H, const FloquetSolution& sol) {
  const int M = H.max_mode();
  double worst = 0.0;
  for (int n = sol.n_lo + M; n <= sol.n_hi() - M; ++n) {
    CVector r = -sol.hbar * (sol.epsilon - H.omega * n) * sol.coeff(n);
    for (const auto& [m, block] : H.modes) r += block * sol.coeff(n - m);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

}  // namespace ffq::floquet
