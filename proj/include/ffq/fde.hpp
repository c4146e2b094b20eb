#pragma once

// Direct integrator for Caputo fractional ODE systems D^alpha y = f(t, y),
// 0 < alpha <= 1, by the fractional Adams-Bashforth-Moulton method
// (Diethelm, Ford & Freed). Independent of the Floquet machinery so it can act
// as an oracle for it.

#include <cstddef>
#include <functional>

#include "ffq/core.hpp"

namespace ffq::fde {

using Rhs = std::function<CVector(double, const CVector&)>;

struct FdeProblem {
  Rhs rhs;
  double alpha = 1.0;
  CVector psi0;
  double h = 0.0;
  std::size_t steps = 0;

  void validate() const;
};

struct AbmOptions {
  // corrector evaluations per step; 1 gives PECE
  int corrector_iterations = 1;
  // memory window in steps; 0 keeps the full history
  std::size_t history_window = 0;
  // re-solve with h/2 and compare endpoints
  bool check_step_halving = false;
  double halving_tolerance = 1e-6;
};

struct AbmResult {
  Trajectory trajectory;
  // |y_h(T) - y_{h/2}(T)| when the step-halving check ran, else -1
  double halving_difference = -1.0;
  // false when the halving difference exceeds 10x the tolerance
  bool stable = true;
};

/// Fractional predictor-corrector with product-rectangle predictor and
/// product-trapezoidal corrector weights. At alpha = 1 it is the classical
/// AB2/AM2 pair (Heun on the first step).
AbmResult solve_ftse_direct(const FdeProblem& p, const AbmOptions& opts = {});

/// Right-hand side -i hbar^{-alpha} H(t) psi of i hbar^alpha D^alpha psi = H(t) psi.
Rhs schrodinger_rhs(std::function<CMatrix(double)> hamiltonian, double alpha, double hbar);

}  // namespace ffq::fde
