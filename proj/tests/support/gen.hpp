#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>

#include "ffq/core.hpp"

namespace testgen {

inline constexpr int kCases = 40;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  ffq::cplx complex_in_disk(double radius) {
    return std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(-ffq::kPi, ffq::kPi));
  }

  ffq::CVector vector(Eigen::Index d) {
    ffq::CVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = ffq::cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    return v;
  }

  ffq::CMatrix matrix(Eigen::Index d, double scale) {
    ffq::CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = scale * ffq::cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    return m;
  }

  ffq::CMatrix hermitian(Eigen::Index d, double scale) {
    const ffq::CMatrix m = matrix(d, scale);
    return 0.5 * (m + m.adjoint());
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testgen
