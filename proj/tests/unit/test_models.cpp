#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ffq/models.hpp"
#include "ffq/specfun.hpp"
#include "ffq/synthesis.hpp"

using namespace ffq;
using namespace ffq::models;

namespace {

const double kL = 2.0 * kPi;

SpatialModel cosine_box(int points, double v0, double omega = 1.3) {
  return make_spatial_model(1.0, 1.0, omega, 0.0, kL, points, {"cosine", v0, 2.0, 0.0, {}});
}

}  // namespace

TEST_CASE("toy coefficients") {
  const floquet::FloquetSolution zero = toy_coefficients({0.0, 1.0, 1.0}, 4);
  for (int n = -4; n <= 4; ++n) CHECK(zero.coeff(n)[0] == cplx(n == 0 ? 1.0 : 0.0));
  CHECK(zero.epsilon == 0.0);

  const ToyModel tm;
  const floquet::FloquetSolution sol = toy_coefficients(tm, 16);
  CHECK(sol.coeff(0)[0].real() == doctest::Approx(0.7651976866).epsilon(1e-10));
  CHECK(sol.warnings.empty());
  CHECK(floquet::lattice_eigen_residual(toy_hamiltonian(tm), toy_coefficients(tm, 64)) < 1e-10);

  CHECK_THROWS_AS(toy_coefficients({10.0, 1.0, 1.0}, 19), DomainError);
  CHECK_FALSE(toy_coefficients({10.0, 1.0, 1.0}, 20).warnings.empty());
}

TEST_CASE("toy coefficients obey the Bessel recurrence") {
  for (double e0 : {0.5, 1.0, 2.5}) {
    const ToyModel tm{e0, 1.0, 1.0};
    const floquet::FloquetSolution sol = toy_coefficients(tm, 64);
    const double z = tm.drive();
    for (int n = -20; n <= 20; ++n)
      CHECK(std::abs(z * (sol.coeff(n + 1)[0] + sol.coeff(n - 1)[0]) + 2.0 * n * sol.coeff(n)[0]) < 1e-10);
  }
}

TEST_CASE("toy state: initial value and periodic return at alpha = 1") {
  const ToyModel tm{1.7, 1.0, 1.4};
  CHECK(std::abs(toy_fft_state(tm, 0.8, 32, 0.0) - 1.0) < 1e-10);
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(toy_fft_state(tm, 1.0, 32, k * tm.period()) - 1.0) < 1e-10);
  for (double t : {0.3, 1.1, 4.0}) CHECK(std::abs(toy_fft_state(tm, 1.0, 32, t) - toy_classical_state(tm, t)) < 1e-10);
}

TEST_CASE("spatial operator is symmetric and decouples without a potential") {
  const SpatialModel sm = cosine_box(20, 0.4);
  const SpatialOperator op = spatial_assemble(sm, 3);
  const Eigen::SparseMatrix<double> At = op.matrix.transpose();
  CHECK((op.matrix - At).norm() == 0.0);
  CHECK_THROWS_AS(spatial_assemble(sm, 1), DomainError);

  const SpatialModel free = make_spatial_model(1.0, 1.0, 1.3, 0.0, kL, 20, {"zero", 0.0, 1.0, 0.0, {}});
  const std::vector<double> e = box_energies(free);
  const auto sols = spatial_solve(free, 2, 4);
  REQUIRE(sols.size() == 4);
  for (int j = 0; j < 4; ++j) {
    const floquet::FloquetSolution& s = sols[j].solution;
    CHECK(std::abs(s.epsilon - floquet::fold_quasienergy(e[j], 1.3)) < 1e-10);
    // folding e_j by k zones moves the only occupied harmonic from 0 to -k
    const int k = static_cast<int>(std::lround((e[j] - s.epsilon) / 1.3));
    CHECK(std::abs(s.coeff(-k).norm() - 1.0) < 1e-10);
    for (int n = s.n_lo; n <= s.n_hi(); ++n)
      if (n != -k) CHECK(s.coeff(n).norm() < 1e-10);
  }
}

TEST_CASE("banded solve matches the dense Hermitian solve on a small instance") {
  const SpatialModel sm = cosine_box(16, 0.5);
  const floquet::FloquetMatrix F = floquet::build_floquet_matrix(spatial_hamiltonian(sm), 2, 1.0);
  const auto dense = floquet::solve_quasienergies(F);
  CHECK(dense.size() == 16);
  const auto band = spatial_solve(sm, 2, static_cast<int>(dense.size()));
  REQUIRE(band.size() == dense.size());
  for (const auto& b : band) {
    const floquet::FloquetSolution* best = &dense.front();
    for (const auto& d : dense)
      if (std::abs(d.epsilon - b.solution.epsilon) < std::abs(best->epsilon - b.solution.epsilon)) best = &d;
    CHECK(std::abs(best->epsilon - b.solution.epsilon) < 1e-10);
    for (int n = -4; n <= 4; ++n) CHECK((best->coeff(n) - b.solution.coeff(n)).norm() < 1e-10);
  }
  // the materialized operator has a real spectrum
  Eigen::ComplexEigenSolver<CMatrix> es(F.matrix);
  CHECK(es.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("spatial solutions: residual, real gauge, perturbative shifts") {
  const SpatialModel sm = cosine_box(64, 0.01);
  const auto sols = spatial_solve(sm, 8, 3);
  const std::vector<double> e = box_energies(sm);
  REQUIRE(sols.size() == 3);
  for (int j = 0; j < 3; ++j) {
    const auto& s = sols[j];
    CHECK(s.residual < 1e-8);
    CHECK(spatial_residual(sm, s.solution) < 1e-8);
    // real V gives a real operator, so the gauge-fixed fields are real
    for (const CVector& c : s.solution.coeffs) CHECK(c.imag().cwiseAbs().maxCoeff() == 0.0);
    double shift = s.solution.epsilon - floquet::fold_quasienergy(e[j], sm.omega);
    shift -= sm.omega * std::round(shift / sm.omega);
    const double pt = perturbative_shift(sm, j);
    CAPTURE(j);
    CHECK(std::abs(shift - pt) < 0.1 * std::abs(pt));
  }
}

TEST_CASE("spatial model validation") {
  CHECK_THROWS_AS(make_spatial_model(1.0, 1.0, 1.0, 0.0, 1.0, 8, {}), DomainError);
  CHECK_THROWS_AS(make_spatial_model(1.0, 1.0, 1.0, 1.0, 0.0, 32, {}), DomainError);
  CHECK_THROWS_AS(make_spatial_model(1.0, 1.0, 1.0, 0.0, 1.0, 32, {"samples", 0.0, 1.0, 0.0, {1.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(make_spatial_model(1.0, 1.0, 1.0, 0.0, 1.0, 32, {"bogus", 0.0, 1.0, 0.0, {}}), DomainError);
  const SpatialModel q = make_spatial_model(1.0, 1.0, 1.0, -1.0, 1.0, 32, {"quartic", 2.0, 1.0, 0.0, {}});
  CHECK(q.potential[5] == doctest::Approx(2.0 * std::pow(q.x(5), 4)));
}
