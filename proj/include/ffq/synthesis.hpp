#pragma once

// Fractional Floquet synthesis: Mittag-Leffler superposition of classical
// Floquet harmonics, FTSE residuals, and the subordination kernel.
//
// The fractional equation is taken in the form i hbar^alpha D_t^alpha Psi = H(t) Psi
// with a Caputo derivative from t = 0.

#include <vector>

#include "ffq/core.hpp"
#include "ffq/floquet.hpp"

namespace ffq::synthesis {

struct FftParams {
  double alpha = 1.0;
  double hbar = 1.0;
  floquet::FloquetSolution solution;

  void validate() const;
  // hbar^{1-alpha} (omega n - eps): the rate multiplying i t^alpha for harmonic n
  [[nodiscard]] double rate(int n) const;
};

/// Psi(t) = sum_n E_alpha[i hbar^{1-alpha} (omega n - eps) t^alpha] C_n.
CVector synthesize(const FftParams& p, double t);

/// synthesize() on t_k = k h, k = 0..steps.
Trajectory synthesize_trajectory(const FftParams& p, double h, std::size_t steps);

struct ResidualOptions {
  // Grid points with t < skip_time are excluded. Negative means 0.1 T, which
  // avoids the initial layer where the L1 stencil cannot resolve t^{-alpha}.
  double skip_time = -1.0;
};

/// max_k || i hbar^alpha (D^alpha Psi)(t_k) - H(t_k) Psi(t_k) || / max_k ||Psi(t_k)||
/// with the L1 Caputo stencil for alpha < 1 and fourth-order central
/// differences at alpha = 1. The trajectory must start at t = 0.
double ftse_residual(const Trajectory& traj, const floquet::FourierHamiltonian& H, double alpha, double hbar,
                     const ResidualOptions& opts = {});

struct KernelOptions {
  // damping e^{-eta z}; negative means 1e-3 t^{-alpha}
  double eta = -1.0;
  // trapezoid step in z; negative means pi / (2 xi_max)
  double z_step = -1.0;
  // the z window starts at z_start / eta and doubles until the kernel changes
  // by less than tolerance (relative to its maximum)
  double z_start = 8.0;
  double tolerance = 1e-8;
  double z_limit = 400.0;
};

struct SubordinationKernel {
  double t = 0.0;
  double alpha = 0.0;
  double eta = 0.0;
  double z_max = 0.0;
  std::vector<double> xi;
  // (1/pi) int_0^Z e^{-eta z} E_{2a}(-z^2 t^{2a}) cos(z xi) dz
  std::vector<double> cosine_part;
  // (1/pi) int_0^Z e^{-eta z} z t^a E_{2a,1+a}(-z^2 t^{2a}) sin(z xi) dz
  std::vector<double> sine_part;
  std::vector<double> values;

  [[nodiscard]] double dxi() const { return xi.size() > 1 ? xi[1] - xi[0] : 0.0; }
};

/// Regularized kernel K(xi, t) on xi in [0, xi_max] whose Fourier transform is
/// E_alpha(i z t^alpha) e^{-eta |z|}. The even part of E_alpha(i z t^alpha) gives
/// the cosine transform, the odd part the sine transform.
SubordinationKernel subordination_kernel(double t, double alpha, double xi_max, std::size_t n_xi,
                                         const KernelOptions& opts = {});

/// Trapezoid approximation of int K(xi, t) e^{i a xi} d xi on the kernel grid.
cplx reconstruct(const SubordinationKernel& K, double a);

/// int K(xi, t) e^{-i eps xi} u(xi) d xi evaluated harmonic by harmonic, with
/// the rate hbar^{1-alpha}(omega n - eps) in place of (omega n - eps).
CVector subordinated_synthesize(const SubordinationKernel& K, const floquet::FloquetSolution& sol, double hbar = 1.0);

}  // namespace ffq::synthesis
