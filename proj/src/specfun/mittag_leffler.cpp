#include "ffq/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace ffq::specfun {
namespace {

constexpr double kLogMaxDouble = 709.78;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// 1/Gamma(x) for any real x; exact zeros at the poles.
double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 170.0) return std::exp(-std::lgamma(x));
  if (x < -170.0) {
    // reflection: 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi, evaluated in logs
    const double s = std::sin(kPi * x);
    return std::copysign(std::exp(std::lgamma(1.0 - x) + std::log(std::abs(s)) - std::log(kPi)), s);
  }
  return 1.0 / std::tgamma(x);
}

void validate(double alpha, double beta, cplx z, const MittagLefflerConfig& cfg) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw DomainError("mittag_leffler: alpha must lie in (0, 2], got " + std::to_string(alpha));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("mittag_leffler: beta must be finite and positive, got " + std::to_string(beta));
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("mittag_leffler: non-finite argument");
  if (std::abs(z) > cfg.max_abs_z)
    throw DomainError("mittag_leffler: |z| = " + std::to_string(std::abs(z)) +
                      " exceeds the configured maximum " + std::to_string(cfg.max_abs_z));
}

// Residue of e^s s^{alpha-beta} / (s^alpha - z) at a simple pole s*.
cplx pole_residue(double alpha, double beta, cplx s) {
  const double log_mag = s.real() + (1.0 - beta) * std::log(std::abs(s)) - std::log(alpha);
  if (log_mag > kLogMaxDouble) throw OverflowError("mittag_leffler: result exceeds double range");
  return std::pow(s, 1.0 - beta) * std::exp(s) / alpha;
}

// Poles s* = |z|^{1/alpha} exp(i(arg z + 2 pi k)/alpha) lying on the principal
// sheet |arg s| <= pi.
std::vector<cplx> principal_poles(double alpha, cplx z) {
  const double theta = std::arg(z);
  const int kmin = static_cast<int>(std::ceil(-alpha / 2.0 - theta / (2.0 * kPi)));
  const int kmax = static_cast<int>(std::floor(alpha / 2.0 - theta / (2.0 * kPi)));
  const double r = std::pow(std::abs(z), 1.0 / alpha);
  std::vector<cplx> poles;
  for (int k = kmin; k <= kmax; ++k) poles.push_back(std::polar(r, (theta + 2.0 * kPi * k) / alpha));
  return poles;
}

struct ContourParams {
  double mu = 0.0;
  double h = 0.0;
  double n = std::numeric_limits<double>::infinity();
};

// Parabolic contour parameters for a region bounded by two singularities
// (Garrappa, SIAM J. Numer. Anal. 53 (2015), optimal parabolic contour).
ContourParams optimal_param_bounded(double phi_j, double phi_j1, double pj, double qj, double log_epsilon) {
  const double log_eps = std::log(kEps);
  const double fac = 1.01;
  const double f_max = std::exp(log_epsilon - log_eps);
  const double sq_phi_j = std::sqrt(phi_j);
  const double threshold = 2.0 * std::sqrt(log_epsilon - log_eps);
  const double sq_phi_j1 = std::min(std::sqrt(phi_j1), threshold - sq_phi_j);

  double sq_bar_j = sq_phi_j;
  double sq_bar_j1 = sq_phi_j1;
  double f_bar = 1.0;
  bool admissible = true;

  const bool p_pos = pj >= 1e-14;
  const bool q_pos = qj >= 1e-14;
  if (!p_pos && q_pos) {
    const double f_min = sq_phi_j > 0.0 ? fac * std::pow(sq_phi_j / (sq_phi_j1 - sq_phi_j), qj) : fac;
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fq = std::pow(f_bar, -1.0 / qj);
      sq_bar_j1 = (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq);
    } else {
      admissible = false;
    }
  } else if (p_pos && !q_pos) {
    const double f_min = fac * std::pow(sq_phi_j1 / (sq_phi_j1 - sq_phi_j), pj);
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / pj);
      sq_bar_j = (2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp);
    } else {
      admissible = false;
    }
  } else if (p_pos && q_pos) {
    double f_min = fac * (sq_phi_j + sq_phi_j1) / std::pow(sq_phi_j1 - sq_phi_j, std::max(pj, qj));
    if (f_min < f_max) {
      f_min = std::max(f_min, 1.5);
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / pj);
      const double fq = std::pow(f_bar, -1.0 / qj);
      const double w = -phi_j1 / log_epsilon;
      const double den = 2.0 + w - (1.0 + w) * fp + fq;
      sq_bar_j = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den;
      sq_bar_j1 = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den;
    } else {
      admissible = false;
    }
  }
  if (!admissible) return {};

  const double log_eps_region = log_epsilon - std::log(f_bar);
  const double w = -sq_bar_j1 * sq_bar_j1 / log_eps_region;
  ContourParams out;
  const double mid = ((1.0 + w) * sq_bar_j + sq_bar_j1) / (2.0 + w);
  out.mu = mid * mid;
  out.h = -2.0 * kPi / log_eps_region * (sq_bar_j1 - sq_bar_j) / ((1.0 + w) * sq_bar_j + sq_bar_j1);
  out.n = std::ceil(std::sqrt(1.0 - log_eps_region / out.mu) / out.h);
  return out;
}

// Parameters for the unbounded region to the right of the last singularity.
ContourParams optimal_param_unbounded(double phi_j, double pj, double log_epsilon) {
  const double sq_phi_j = std::sqrt(phi_j);
  double phibar = phi_j > 0.0 ? phi_j * 1.01 : 0.01;
  double sq_phibar = std::sqrt(phibar);
  const double f_min = 1.0;
  const double f_max = 10.0;
  const double f_tar = 5.0;

  double n = 0.0;
  double a = 0.0;
  double sq_mu = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double phi_t = phibar;
    const double log_eps_phi_t = log_epsilon / phi_t;
    n = std::ceil(phi_t / kPi * (1.0 - 1.5 * log_eps_phi_t + std::sqrt(1.0 - 2.0 * log_eps_phi_t)));
    a = kPi * n / phi_t;
    sq_mu = sq_phibar * std::abs(4.0 - a) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a));
    const double fbar = std::pow((sq_phibar - sq_phi_j) / sq_mu, -pj);
    if (pj < 1e-14 || (f_min < fbar && fbar < f_max)) break;
    sq_phibar = std::pow(f_tar, -1.0 / pj) * sq_mu + sq_phi_j;
    phibar = sq_phibar * sq_phibar;
  }

  ContourParams out;
  out.mu = sq_mu * sq_mu;
  out.h = (-3.0 * a - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n;
  out.n = n;

  // keep round-off under control for large mu
  const double log_eps = std::log(kEps);
  const double threshold = log_epsilon - log_eps;
  if (out.mu > threshold) {
    const double q = pj < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / pj) * std::sqrt(out.mu);
    const double pb = (q + sq_phi_j) * (q + sq_phi_j);
    if (pb < threshold) {
      const double w = std::sqrt(log_eps / (log_eps - log_epsilon));
      const double u = std::sqrt(-pb / log_eps);
      out.mu = threshold;
      out.n = std::ceil(w * log_epsilon / (2.0 * kPi) / (u * w - 1.0));
      out.h = std::sqrt(log_eps / (log_eps - log_epsilon)) / out.n;
    } else {
      return {};
    }
  }
  return out;
}

}  // namespace

namespace detail {

cplx mlf_series(double alpha, double beta, cplx z) {
  cplx sum = 0.0;
  cplx zk = 1.0;
  for (int k = 0; k < 1'000'000; ++k) {
    const double g = alpha * k + beta;
    const cplx term = zk * rgamma(g);
    sum += term;
    // terms decrease monotonically once Gamma is increasing and |z| <= 1
    if (g > 2.0 && std::abs(term) <= 0.25 * kEps * std::abs(sum)) break;
    if (g > 2.0 && std::abs(term) < 1e-300) break;
    zk *= z;
  }
  return sum;
}

cplx mlf_contour(double alpha, double beta, cplx z) {
  double log_epsilon = std::log(1e-15);
  const double log_eps = std::log(kEps);

  std::vector<cplx> poles = principal_poles(alpha, z);
  std::vector<std::pair<double, cplx>> sing;
  for (const cplx& s : poles) {
    const double phi = 0.5 * (s.real() + std::abs(s));
    if (phi > 1e-15) sing.emplace_back(phi, s);
  }
  std::sort(sing.begin(), sing.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  sing.insert(sing.begin(), {0.0, cplx(0.0)});

  const std::size_t j1 = sing.size();
  std::vector<double> phi(j1 + 1);
  std::vector<double> p(j1, 1.0);
  std::vector<double> q(j1, 1.0);
  for (std::size_t j = 0; j < j1; ++j) phi[j] = sing[j].first;
  phi[j1] = std::numeric_limits<double>::infinity();
  p[0] = std::max(0.0, -2.0 * (alpha - beta + 1.0));
  q[j1 - 1] = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> admissible;
  for (std::size_t j = 0; j < j1; ++j)
    if (phi[j] < log_epsilon - log_eps && phi[j] < phi[j + 1]) admissible.push_back(j);

  std::vector<ContourParams> params(j1);
  std::size_t best = admissible.front();
  for (int widen = 0; widen < 15; ++widen) {
    for (std::size_t j : admissible) {
      params[j] = (j + 1 < j1) ? optimal_param_bounded(phi[j], phi[j + 1], p[j], q[j], log_epsilon)
                               : optimal_param_unbounded(phi[j], p[j], log_epsilon);
    }
    best = *std::min_element(admissible.begin(), admissible.end(),
                             [&](std::size_t a, std::size_t b) { return params[a].n < params[b].n; });
    if (params[best].n <= 200.0) break;
    log_epsilon += std::log(10.0);
  }
  const ContourParams& cp = params[best];
  if (!std::isfinite(cp.n)) throw ConvergenceError("mittag_leffler: no admissible integration contour");

  const int n = static_cast<int>(cp.n);
  cplx integral = 0.0;
  for (int k = -n; k <= n; ++k) {
    const double u = cp.h * k;
    const cplx s = cp.mu * (kI * u + 1.0) * (kI * u + 1.0);
    const cplx ds = cplx(-2.0 * cp.mu * u, 2.0 * cp.mu);
    integral += std::exp(s) * std::pow(s, alpha - beta) / (std::pow(s, alpha) - z) * ds;
  }
  integral *= cp.h / (2.0 * kPi * kI);

  cplx residues = 0.0;
  for (std::size_t j = best + 1; j < j1; ++j) residues += pole_residue(alpha, beta, sing[j].second);
  return integral + residues;
}

cplx mlf_asymptotic(double alpha, double beta, cplx z) {
  cplx exponential = 0.0;
  for (const cplx& s : principal_poles(alpha, z)) exponential += pole_residue(alpha, beta, s);

  cplx algebraic = 0.0;
  const cplx zinv = 1.0 / z;
  cplx zk = zinv;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 400; ++k) {
    const cplx term = zk * rgamma(beta - alpha * k);
    const double mag = std::abs(term);
    if (mag > last && mag > 0.0) break;  // asymptotic series started to diverge
    algebraic -= term;
    if (mag != 0.0) last = mag;
    if (mag <= 0.1 * kEps * (std::abs(algebraic) + std::abs(exponential)) && k > 2) break;
    zk *= zinv;
  }
  return exponential + algebraic;
}

}  // namespace detail

cplx mittag_leffler(double alpha, double beta, cplx z, const MittagLefflerConfig& cfg) {
  validate(alpha, beta, z, cfg);
  if (z == cplx(0.0)) return rgamma(beta);
  if (alpha == 1.0 && beta == 1.0) {
    if (z.real() > kLogMaxDouble) throw OverflowError("mittag_leffler: result exceeds double range");
    return std::exp(z);
  }

  const double r = std::abs(z);
  cplx value;
  if (r <= cfg.series_radius)
    value = detail::mlf_series(alpha, beta, z);
  else if (r <= cfg.asymptotic_radius)
    value = detail::mlf_contour(alpha, beta, z);
  else
    value = detail::mlf_asymptotic(alpha, beta, z);

  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw OverflowError("mittag_leffler: result exceeds double range");
  if (z.imag() == 0.0) value.imag(0.0);
  return value;
}

}  // namespace ffq::specfun
