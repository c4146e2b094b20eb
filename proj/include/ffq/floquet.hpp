#pragma once

// Classical Floquet problem in harmonic space.
//
// Convention: H(t) = sum_m h(m) e^{i m omega t} and
// Psi(t) = e^{-i eps t} sum_n C_n e^{i n omega t}, so the coefficients obey
//   sum_m h(m) C_{n-m} + hbar omega n C_n = hbar eps C_n.

#include <map>
#include <string>
#include <vector>

#include "ffq/core.hpp"

namespace ffq::floquet {

struct FourierHamiltonian {
  double omega = 1.0;
  Eigen::Index dim = 1;
  std::map<int, CMatrix> modes;

  [[nodiscard]] int max_mode() const;
  [[nodiscard]] double period() const { return 2.0 * kPi / omega; }
  [[nodiscard]] CMatrix at(double t) const;
  // max_m ||h(m) - h(-m)^dagger||, zero for a Hermitian H(t)
  [[nodiscard]] double hermiticity_defect() const;
  void validate() const;
};

struct FloquetSolution {
  double epsilon = 0.0;
  double hbar = 1.0;
  double omega = 1.0;
  int truncation = 0;
  // coeffs[i] holds C_{n_lo + i}
  int n_lo = 0;
  std::vector<CVector> coeffs;
  double residual = 0.0;
  std::vector<std::string> warnings;

  [[nodiscard]] int n_hi() const { return n_lo + static_cast<int>(coeffs.size()) - 1; }
  [[nodiscard]] Eigen::Index dim() const { return coeffs.empty() ? 0 : coeffs.front().size(); }
  [[nodiscard]] CVector coeff(int n) const;
  // u(t) = sum_n C_n e^{i n omega t}
  [[nodiscard]] CVector periodic_part(double t) const;
  // e^{-i eps t} u(t)
  [[nodiscard]] CVector state(double t) const;
  [[nodiscard]] double norm_squared() const;
};

struct FloquetMatrix {
  CMatrix matrix;
  int truncation = 0;
  Eigen::Index dim = 0;
  double hbar = 1.0;
  double omega = 1.0;
};

int default_truncation(const FourierHamiltonian& H, double hbar);

/// Extended operator on harmonics n in [-N, N]; block (n, n') is
/// h(n - n') + hbar omega n delta_{nn'}. Requires N >= max_mode().
FloquetMatrix build_floquet_matrix(const FourierHamiltonian& H, int N, double hbar);

/// Diagonalizes F and returns one solution per Floquet family: the copy whose
/// harmonic centroid sum_n n ||C_n||^2 lies in [-1/2, 1/2), relabelled so that
/// eps is folded into [-omega/2, omega/2). Sorted by eps, normalized, gauge
/// fixed, each with its eigen-equation residual ||F v - hbar eps v||.
std::vector<FloquetSolution> solve_quasienergies(const FloquetMatrix& F);

/// max_n || sum_m h(m) C_{n-m} - hbar (eps - omega n) C_n || over harmonics at
/// least max_mode() away from the ends of the coefficient window.
double lattice_eigen_residual(const FourierHamiltonian& H, const FloquetSolution& sol);

/// Global phase: largest-magnitude component made real positive; ties go to the
/// lowest harmonic, then the lowest basis index.
void fix_gauge(FloquetSolution& sol);

/// Shifts the labelling eps -> eps - k omega, C_n -> C_{n+k}, which leaves the
/// physical state unchanged.
void shift_zone(FloquetSolution& sol, int k);

double fold_quasienergy(double eps, double omega);

}  // namespace ffq::floquet
