#pragma once

// The two worked systems: the scalar toy drive H0 cos(omega t), and a particle
// in a box with potential V(x) cos(omega t).

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "ffq/core.hpp"
#include "ffq/floquet.hpp"

namespace ffq::models {

// ---- toy model --------------------------------------------------------------

// H(t) = H0 cos(omega t) acting on an eigenstate psi0 of H0 with eigenvalue e0.
struct ToyModel {
  double e0 = 1.0;
  double hbar = 1.0;
  double omega = 1.0;

  [[nodiscard]] double drive() const { return e0 / (hbar * omega); }
  [[nodiscard]] double period() const { return 2.0 * kPi / omega; }
};

// h(+-1) = e0/2, d = 1
floquet::FourierHamiltonian toy_hamiltonian(const ToyModel& tm);

/// eps = 0 and C_n = (-1)^n J_n(e0 / hbar omega) for |n| <= N, normalized.
/// Requires N >= 2 e0 / hbar omega; a warning is attached when the Bessel mass
/// beyond N exceeds 1e-12.
floquet::FloquetSolution toy_coefficients(const ToyModel& tm, int N);

/// Fractional Floquet state sum_n E_alpha(i hbar^{1-alpha} omega n t^alpha) C_n.
cplx toy_fft_state(const ToyModel& tm, double alpha, int N, double t);

/// Closed-form alpha = 1 evolution exp[-i (e0 / hbar omega) sin(omega t)].
cplx toy_classical_state(const ToyModel& tm, double t);

// ---- spatial model ----------------------------------------------------------

struct PotentialSpec {
  // "zero", "cosine" (v0 cos(k x + phase)), "quartic" (v0 x^4), or "samples"
  std::string kind = "zero";
  double v0 = 0.0;
  double k = 1.0;
  double phase = 0.0;
  std::vector<double> samples;
};

// Dirichlet box: interior points x_j = x_min + j dx, j = 1..points, with
// dx = (x_max - x_min) / (points + 1).
struct SpatialModel {
  double mass = 1.0;
  double hbar = 1.0;
  double omega = 1.0;
  double x_min = 0.0;
  double x_max = 1.0;
  int points = 16;
  std::vector<double> potential;

  [[nodiscard]] double dx() const { return (x_max - x_min) / (points + 1); }
  [[nodiscard]] double x(int j) const { return x_min + (j + 1) * dx(); }
  void validate() const;
};

SpatialModel make_spatial_model(double mass, double hbar, double omega, double x_min, double x_max, int points,
                                const PotentialSpec& potential);

/// Same content as a FourierHamiltonian: h(0) is the kinetic operator, h(+-1) = V/2.
floquet::FourierHamiltonian spatial_hamiltonian(const SpatialModel& sm);

// Real symmetric operator over (x_j, n), ordered as index = j (2N+1) + (n+N) so
// that the bandwidth is 2N+1:
//   -(hbar^2/2m) C_n'' + (V/2)(C_{n+1} + C_{n-1}) + hbar omega n C_n.
// Its eigenvalues are hbar eps.
struct SpatialOperator {
  int truncation = 0;
  int points = 0;
  Eigen::SparseMatrix<double> matrix;

  [[nodiscard]] int bandwidth() const { return 2 * truncation + 1; }
  [[nodiscard]] Eigen::Index index(int j, int n) const {
    return static_cast<Eigen::Index>(j) * bandwidth() + (n + truncation);
  }
};

SpatialOperator spatial_assemble(const SpatialModel& sm, int N);

struct SpatialSolution {
  // coeffs[i] is the grid field C_{n_lo + i}(x_j)
  floquet::FloquetSolution solution;
  // ||K C|| / ||C|| with K C_n = -(hbar^2/2m) C_n'' + (V/2)(C_{n+1} + C_{n-1}) + hbar(omega n - eps) C_n
  double residual = 0.0;
};

/// The k_eigs lowest Floquet families (ordered by their unfolded eigenvalue),
/// each represented by the copy whose harmonic centroid lies in [-1/2, 1/2)
/// and relabelled so eps is folded into [-omega/2, omega/2). Uses the LAPACK
/// banded symmetric eigensolver on an eigenvalue window grown until enough
/// families are found.
std::vector<SpatialSolution> spatial_solve(const SpatialModel& sm, int N, int k_eigs);

/// Residual ||K C|| / ||C|| of a harmonic field against the model equation.
double spatial_residual(const SpatialModel& sm, const floquet::FloquetSolution& sol);

/// Second-order perturbative shift of the j-th box level (0-based) under
/// V(x) cos(omega t), summed over all discrete box modes:
///   sum_{k, s = +-1} |V_kj / 2|^2 / (E_j - E_k - s hbar omega).
double perturbative_shift(const SpatialModel& sm, int level);

/// Discrete Dirichlet box energies of the kinetic operator, ascending.
std::vector<double> box_energies(const SpatialModel& sm);

}  // namespace ffq::models
