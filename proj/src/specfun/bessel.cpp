#include "ffq/specfun.hpp"

#include <cmath>
#include <string>

namespace ffq::specfun {
namespace {

void check_order(int n, const BesselConfig& cfg) {
  if (std::abs(n) > cfg.max_order)
    throw DomainError("bessel_j: order " + std::to_string(n) + " exceeds configured maximum " +
                      std::to_string(cfg.max_order));
}

// Ascending series, used only for tiny |z| where 2k/z would overflow.
std::vector<cplx> small_argument(int n_max, cplx z) {
  std::vector<cplx> out(n_max + 1);
  const cplx half = 0.5 * z;
  cplx lead = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    cplx term = lead;
    cplx sum = term;
    for (int m = 1; m < 30; ++m) {
      term *= -half * half / (static_cast<double>(m) * (m + n));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    out[n] = sum;
    lead *= half / static_cast<double>(n + 1);
  }
  return out;
}

}  // namespace

std::vector<cplx> bessel_j_sequence(int n_max, cplx z, const BesselConfig& cfg) {
  if (n_max < 0) throw DomainError("bessel_j_sequence: negative n_max");
  check_order(n_max, cfg);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("bessel_j: non-finite argument");
  if (std::abs(z) < 1e-6) return small_argument(n_max, z);

  // Miller's algorithm: start well above both n_max and |z| and recur down.
  const double az = std::abs(z);
  const int top = std::max(n_max, static_cast<int>(az));
  int start = top + 20 + static_cast<int>(std::sqrt(40.0 * (top + 1)));
  if (az > 1.0) start += static_cast<int>(std::abs(z.imag()));
  start += start % 2;

  std::vector<cplx> j(start + 2, cplx(0.0));
  j[start + 1] = 0.0;
  j[start] = 1e-30;
  const cplx two_over_z = 2.0 / z;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = static_cast<double>(k) * two_over_z * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start; ++i) j[i] *= 1e-250;
    }
  }

  // Normalize with a generating-function identity free of cancellation:
  // real z uses J0 + 2 sum J_2k = 1; complex z uses sum t^n J_n = exp(z (t - 1/t)/2)
  // with t = -i or +i, whichever gives |exp| >= 1.
  cplx norm;
  cplx target;
  if (z.imag() == 0.0) {
    norm = j[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
    target = 1.0;
  } else {
    const cplx t = z.imag() > 0.0 ? -kI : kI;
    norm = j[0];
    cplx tn = 1.0;
    for (int k = 1; k <= start; ++k) {
      tn *= t;
      norm += 2.0 * tn * j[k];
    }
    target = std::exp(0.5 * z * (t - 1.0 / t));
  }
  const cplx scale = target / norm;
  std::vector<cplx> out(n_max + 1);
  for (int n = 0; n <= n_max; ++n) out[n] = j[n] * scale;
  return out;
}

cplx bessel_j(int n, cplx z, const BesselConfig& cfg) {
  check_order(n, cfg);
  const int m = std::abs(n);
  const double sign = (n < 0 && m % 2 == 1) ? -1.0 : 1.0;
  if (z == cplx(0.0)) return m == 0 ? 1.0 : 0.0;

  cplx value;
  if (m >= 2 && std::abs(z) >= 2.0 * m) {
    // forward recurrence is stable while the order stays below |z|
    const std::vector<cplx> base = bessel_j_sequence(1, z, cfg);
    cplx prev = base[0];
    cplx cur = base[1];
    for (int k = 1; k < m; ++k) {
      const cplx next = 2.0 * k / z * cur - prev;
      prev = cur;
      cur = next;
    }
    value = cur;
  } else {
    value = bessel_j_sequence(m, z, cfg)[m];
  }
  return sign * value;
}

}  // namespace ffq::specfun
