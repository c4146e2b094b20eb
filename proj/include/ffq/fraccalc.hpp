#pragma once

// Fractional operators on uniform grids and periodic functions.

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "ffq/core.hpp"

namespace ffq::fraccalc {

// Samples f(t0 + k h). Entries with index < first are undefined (a derivative
// stencil that cannot be evaluated at the first point marks it this way).
struct UniformGridFn {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<cplx> values;
  std::size_t first = 0;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] double time(std::size_t k) const { return t0 + static_cast<double>(k) * h; }
  [[nodiscard]] bool defined(std::size_t k) const { return k >= first && k < values.size(); }
};

UniformGridFn sample(const std::function<cplx(double)>& f, double t0, double h, std::size_t count);

// L1 weights b_m = (m+1)^{1-alpha} - m^{1-alpha}, m = 0..count-1.
std::vector<double> l1_weights(double alpha, std::size_t count);

/// L1 discretization of the Caputo derivative of order alpha in (0,1) with
/// lower terminal t0. The value at t0 is absent. Error O(h^{2-alpha}) for
/// smooth f.
UniformGridFn caputo_l1(const UniformGridFn& f, double alpha);

/// Same stencil applied to a vector-valued trajectory; entry 0 is left zero.
std::vector<CVector> caputo_l1(const std::vector<CVector>& states, double h, double alpha);

/// Riemann-Liouville integral I^nu f, nu in (0,1], by the product trapezoidal
/// rule with the kernel (t-s)^{nu-1} integrated exactly on each cell. Exact for
/// piecewise linear f.
UniformGridFn rl_integral(const UniformGridFn& f, double nu);

/// Riemann-Liouville derivative of order mu in (0,1): the L1 Caputo value plus
/// the boundary term f(t0) (t-t0)^{-mu} / Gamma(1-mu).
UniformGridFn rl_derivative_l1(const UniformGridFn& f, double mu);

// Product-trapezoidal weights a_{j,k}, j = 0..k, without the h^nu/Gamma(nu+2)
// factor. Shared with the fractional Adams corrector.
std::vector<double> product_trapezoid_weights(double nu, std::size_t k);

struct ExponentialIdentityReport {
  double l_bar = 0.0;
  double mu = 0.0;
  double h = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  // max |caputo_l1(e^{i l t}) - t^{-mu} E_{1,1-mu}(i l t)|
  double caputo_vs_target = 0.0;
  // the same target against the Riemann-Liouville derivative
  double rl_derivative_vs_target = 0.0;
  // max |rl_integral(e^{i l t}, mu) - t^{mu} E_{1,1+mu}(i l t)|
  double rl_integral_vs_laplace = 0.0;
  // max |rl_integral(e^{i l t}, mu) - t^{-mu} E_{1,1-mu}(i l t)|
  double rl_integral_vs_target = 0.0;
};

/// Compares the fractional operators of e^{i l t} with the closed forms
/// t^{-mu} E_{1,1-mu}(i l t) and t^{mu} E_{1,1+mu}(i l t) on t in
/// [t_min, t_max]. l_bar = 0 is rejected.
ExponentialIdentityReport caputo_of_exponential_identity(double l_bar, double mu, double h, double t_min,
                                                         double t_max);

struct PeriodicModes {
  double period = 2.0 * kPi;
  std::map<int, cplx> modes;

  [[nodiscard]] double wavenumber(int l) const { return 2.0 * kPi * l / period; }
  [[nodiscard]] cplx operator()(double x) const;
};

/// Fourier multiplier -|k|^mu applied mode by mode, mu in (0,2].
PeriodicModes riesz_feller_periodic(const PeriodicModes& g, double mu);

struct GlQuadratureConfig {
  double cutoff = 1e5;
  double step = 1e-4;
};

/// Symmetric regularized Grunwald-Letnikov (Riesz) derivative at x:
///   mu / (2 Gamma(1-mu) cos(mu pi/2)) * int_0^inf [f(x+y) - 2 f(x) + f(x-y)] / y^{1+mu} dy,
/// whose symbol is -|k|^mu. The (0, step) piece uses the Taylor expansion of the
/// bracket, (step, cutoff) is done by Gauss-Legendre panels, and the constant
/// part of the tail beyond cutoff is added in closed form. mu = 1 is rejected.
cplx grunwald_letnikov_symmetric(const std::function<cplx(double)>& f, double mu, double x,
                                 const GlQuadratureConfig& cfg = {});

}  // namespace ffq::fraccalc
