#pragma once

// Mittag-Leffler functions E_{alpha,beta}(z) and Bessel functions J_n(z) of
// complex argument.

#include <vector>

#include "ffq/core.hpp"

namespace ffq::specfun {

struct MittagLefflerConfig {
  // Largest |z| accepted. Arguments beyond it are rejected, never truncated.
  double max_abs_z = 1e10;
  // Power series is used for |z| <= series_radius.
  double series_radius = 1.0;
  // Beyond this radius the algebraic asymptotic expansion (plus the
  // exponential pole contributions) replaces the contour integral.
  double asymptotic_radius = 1e3;
};

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta), for alpha in (0, 2]
/// and beta > 0.
///
/// Dispatch: power series for |z| <= 1, inverse Laplace transform on an
/// optimal parabolic contour (plus residues of the poles s^alpha = z) for
/// moderate |z|, and the asymptotic expansion for large |z|. Relative accuracy
/// is about 1e-13 for |z| <= 50 away from zeros of the function.
///
/// Throws DomainError for invalid alpha/beta or |z| above the configured bound,
/// OverflowError if the value does not fit in a double.
[[nodiscard]] cplx mittag_leffler(double alpha, double beta, cplx z,
                                  const MittagLefflerConfig& cfg = {});

/// One-parameter function E_alpha(z) = E_{alpha,1}(z).
[[nodiscard]] inline cplx mittag_leffler(double alpha, cplx z) { return mittag_leffler(alpha, 1.0, z); }

namespace detail {
// Individual evaluation routes, exposed for cross-validation tests.
cplx mlf_series(double alpha, double beta, cplx z);
cplx mlf_contour(double alpha, double beta, cplx z);
cplx mlf_asymptotic(double alpha, double beta, cplx z);
}  // namespace detail

struct BesselConfig {
  int max_order = 256;
};

/// J_n(z) for integer n, |n| <= cfg.max_order. Negative orders use
/// J_{-n} = (-1)^n J_n.
[[nodiscard]] cplx bessel_j(int n, cplx z, const BesselConfig& cfg = {});

/// J_0(z) ... J_{n_max}(z) from one normalized backward recurrence.
[[nodiscard]] std::vector<cplx> bessel_j_sequence(int n_max, cplx z, const BesselConfig& cfg = {});

}  // namespace ffq::specfun
