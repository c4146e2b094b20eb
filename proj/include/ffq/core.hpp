#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ffq {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Error hierarchy. Everything thrown by the library derives from std::exception
// through one of the standard bases, so callers can catch coarsely.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform time grid t_k = t0 + k h holding one state vector per point.
struct Trajectory {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<CVector> states;

  [[nodiscard]] std::size_t size() const { return states.size(); }
  [[nodiscard]] double time(std::size_t k) const { return t0 + static_cast<double>(k) * h; }
  [[nodiscard]] Eigen::Index dim() const { return states.empty() ? 0 : states.front().size(); }
};

}  // namespace ffq
