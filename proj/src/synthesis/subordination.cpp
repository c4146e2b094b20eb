#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ffq/specfun.hpp"
#include "ffq/synthesis.hpp"

namespace ffq::synthesis {
namespace {

// Adds the trapezoid contributions of z_j = j dz, j in [j_begin, j_end), to the
// cosine and sine accumulators. The z nodes are processed in groups of kLanes
// with independent rotors e^{i z_j xi_i}, stepped along the uniform xi grid.
void accumulate(const SubordinationKernel& K, double dz, std::size_t j_begin, std::size_t j_end,
                std::vector<double>& cos_acc, std::vector<double>& sin_acc) {
  constexpr std::size_t kLanes = 8;
  const double a2 = 2.0 * K.alpha;
  const double ta = std::pow(K.t, K.alpha);
  const double dxi = K.dxi();
  const std::size_t n = cos_acc.size();
  specfun::MittagLefflerConfig cfg;
  cfg.max_abs_z = std::numeric_limits<double>::infinity();

  for (std::size_t j0 = j_begin; j0 < j_end; j0 += kLanes) {
    std::array<double, kLanes> even{}, odd{}, sr{}, si{}, cr{}, ci{};
    for (std::size_t l = 0; l < kLanes; ++l) {
      const std::size_t j = j0 + l;
      if (j >= j_end) {
        sr[l] = 1.0;
        cr[l] = 1.0;
        continue;
      }
      const double z = static_cast<double>(j) * dz;
      const double w = (j == 0 ? 0.5 : 1.0) * dz * std::exp(-K.eta * z) / kPi;
      const cplx arg = -(z * ta) * (z * ta);
      even[l] = specfun::mittag_leffler(a2, 1.0, arg, cfg).real() * w;
      odd[l] = z == 0.0 ? 0.0 : z * ta * specfun::mittag_leffler(a2, 1.0 + K.alpha, arg, cfg).real() * w;
      sr[l] = std::cos(z * dxi);
      si[l] = std::sin(z * dxi);
      cr[l] = std::cos(z * K.xi.front());
      ci[l] = std::sin(z * K.xi.front());
    }
    for (std::size_t start = 0; start < n; start += 256) {
      const std::size_t stop = std::min(n, start + 256);
      for (std::size_t i = start; i < stop; ++i) {
        double c_sum = 0.0;
        double s_sum = 0.0;
        for (std::size_t l = 0; l < kLanes; ++l) {
          c_sum += even[l] * cr[l];
          s_sum += odd[l] * ci[l];
          const double nr = cr[l] * sr[l] - ci[l] * si[l];
          ci[l] = cr[l] * si[l] + ci[l] * sr[l];
          cr[l] = nr;
        }
        cos_acc[i] += c_sum;
        sin_acc[i] += s_sum;
      }
      // renormalize the rotors against drift
      for (std::size_t l = 0; l < kLanes; ++l) {
        const double len = std::hypot(cr[l], ci[l]);
        cr[l] /= len;
        ci[l] /= len;
      }
    }
  }
}

}  // namespace

SubordinationKernel subordination_kernel(double t, double alpha, double xi_max, std::size_t n_xi,
                                         const KernelOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("subordination_kernel: alpha must lie in (0,1)");
  if (!(t > 0.0)) throw DomainError("subordination_kernel: t must be positive");
  if (!(xi_max > 0.0) || n_xi < 2) throw DomainError("subordination_kernel: need xi_max > 0 and at least 2 points");

  SubordinationKernel K;
  K.t = t;
  K.alpha = alpha;
  K.eta = opts.eta > 0.0 ? opts.eta : 1e-3 * std::pow(t, -alpha);
  K.xi.resize(n_xi);
  for (std::size_t i = 0; i < n_xi; ++i) K.xi[i] = xi_max * static_cast<double>(i) / static_cast<double>(n_xi - 1);

  const double dz = opts.z_step > 0.0 ? opts.z_step : kPi / (2.0 * xi_max);
  std::vector<double> cos_acc(n_xi, 0.0);
  std::vector<double> sin_acc(n_xi, 0.0);

  double z_max = opts.z_start / K.eta;
  std::size_t done = 0;
  std::vector<double> previous;
  bool converged = false;
  while (z_max <= opts.z_limit / K.eta * (1.0 + 1e-12)) {
    const auto target = static_cast<std::size_t>(std::ceil(z_max / dz)) + 1;
    accumulate(K, dz, done, target, cos_acc, sin_acc);
    done = target;

    std::vector<double> current(n_xi);
    for (std::size_t i = 0; i < n_xi; ++i) current[i] = cos_acc[i] + sin_acc[i];
    if (!previous.empty()) {
      double change = 0.0;
      double size = 0.0;
      for (std::size_t i = 0; i < n_xi; ++i) {
        change = std::max(change, std::abs(current[i] - previous[i]));
        size = std::max(size, std::abs(current[i]));
      }
      if (change <= opts.tolerance * size) {
        converged = true;
        break;
      }
    }
    previous = std::move(current);
    z_max *= 2.0;
  }
  if (!converged)
    throw ConvergenceError("subordination_kernel: z window did not converge below " + std::to_string(opts.z_limit) +
                           "/eta");

  K.z_max = static_cast<double>(done - 1) * dz;
  K.cosine_part = std::move(cos_acc);
  K.sine_part = std::move(sin_acc);
  K.values.resize(n_xi);
  for (std::size_t i = 0; i < n_xi; ++i) K.values[i] = K.cosine_part[i] + K.sine_part[i];
  return K;
}

cplx reconstruct(const SubordinationKernel& K, double a) {
  const std::size_t n = K.values.size();
  if (n < 2) throw DomainError("reconstruct: empty kernel");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * K.values[i] * std::exp(kI * (a * K.xi[i]));
  }
  return sum * K.dxi();
}

CVector subordinated_synthesize(const SubordinationKernel& K, const floquet::FloquetSolution& sol, double hbar) {
  if (sol.coeffs.empty()) throw DomainError("subordinated_synthesize: solution has no coefficients");
  const double scale = std::pow(hbar, 1.0 - K.alpha);
  CVector psi = CVector::Zero(sol.dim());
  for (std::size_t i = 0; i < sol.coeffs.size(); ++i) {
    const int n = sol.n_lo + static_cast<int>(i);
    psi += reconstruct(K, scale * (sol.omega * n - sol.epsilon)) * sol.coeffs[i];
  }
  return psi;
}

}  // namespace ffq::synthesis
