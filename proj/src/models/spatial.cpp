#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <lapacke.h>

#include "ffq/models.hpp"

namespace ffq::models {

namespace {

// Eigenvectors of the symmetric band matrix A for the given (ascending)
// eigenvalues by inverse iteration on a banded LU of A - sigma I. Vectors of
// eigenvalues closer than the cluster gap are orthogonalized against each other.
std::vector<std::vector<double>> band_inverse_iteration(const Eigen::SparseMatrix<double>& A, lapack_int kd,
                                                        const std::vector<double>& eigenvalues) {
  const lapack_int n = static_cast<lapack_int>(A.rows());
  const lapack_int ldab = 3 * kd + 1;
  double scale = 0.0;
  for (int col = 0; col < A.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) scale = std::max(scale, std::abs(it.value()));
  const double cluster_gap = 1e-7 * scale;
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<std::vector<double>> out;
  std::vector<double> ab(static_cast<std::size_t>(ldab) * n);
  std::vector<lapack_int> ipiv(n);
  std::size_t cluster_start = 0;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    if (k > 0 && eigenvalues[k] - eigenvalues[k - 1] > cluster_gap) cluster_start = k;
    // shift slightly off the eigenvalue so the factorization stays regular
    const double sigma = eigenvalues[k] + 10.0 * eps * scale * (1.0 + static_cast<double>(k - cluster_start));

    std::fill(ab.begin(), ab.end(), 0.0);
    for (int col = 0; col < A.outerSize(); ++col)
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
        ab[static_cast<std::size_t>(2 * kd + it.row() - col + col * ldab)] = it.value();
    for (lapack_int i = 0; i < n; ++i) ab[static_cast<std::size_t>(2 * kd + i * ldab)] -= sigma;
    const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kd, kd, ab.data(), ldab, ipiv.data());
    if (info < 0) throw ConvergenceError("spatial_solve: banded LU failed");

    // deterministic start vector
    std::vector<double> v(static_cast<std::size_t>(n));
    for (lapack_int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::sin(1.7 * i + 0.3 * k);
    for (int it = 0; it < 4; ++it) {
      for (std::size_t c = cluster_start; c < k; ++c) {
        double dot = 0.0;
        for (lapack_int i = 0; i < n; ++i) dot += out[c][static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        for (lapack_int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= dot * out[c][static_cast<std::size_t>(i)];
      }
      if (LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kd, kd, 1, ab.data(), ldab, ipiv.data(), v.data(), n) != 0)
        throw ConvergenceError("spatial_solve: banded solve failed");
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : v) x /= norm;
    }
    for (std::size_t c = cluster_start; c < k; ++c) {
      double dot = 0.0;
      for (lapack_int i = 0; i < n; ++i) dot += out[c][static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      for (lapack_int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= dot * out[c][static_cast<std::size_t>(i)];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

void SpatialModel::validate() const {
  if (!(mass > 0.0)) throw DomainError("SpatialModel: mass must be positive");
  if (!(hbar > 0.0)) throw DomainError("SpatialModel: hbar must be positive");
  if (!(omega > 0.0)) throw DomainError("SpatialModel: omega must be positive");
  if (!(x_max > x_min)) throw DomainError("SpatialModel: need x_max > x_min");
  if (points < 16) throw DomainError("SpatialModel: need at least 16 grid points");
  if (static_cast<int>(potential.size()) != points)
    throw DomainError("SpatialModel: potential has " + std::to_string(potential.size()) + " samples for " +
                      std::to_string(points) + " grid points");
  for (double v : potential)
    if (!std::isfinite(v)) throw DomainError("SpatialModel: non-finite potential sample");
}

SpatialModel make_spatial_model(double mass, double hbar, double omega, double x_min, double x_max, int points,
                                const PotentialSpec& potential) {
  SpatialModel sm;
  sm.mass = mass;
  sm.hbar = hbar;
  sm.omega = omega;
  sm.x_min = x_min;
  sm.x_max = x_max;
  sm.points = points;
  if (points < 16) throw DomainError("SpatialModel: need at least 16 grid points");
  sm.potential.resize(points);
  if (potential.kind == "zero") {
    std::fill(sm.potential.begin(), sm.potential.end(), 0.0);
  } else if (potential.kind == "cosine") {
    for (int j = 0; j < points; ++j) sm.potential[j] = potential.v0 * std::cos(potential.k * sm.x(j) + potential.phase);
  } else if (potential.kind == "quartic") {
    for (int j = 0; j < points; ++j) sm.potential[j] = potential.v0 * std::pow(sm.x(j), 4);
  } else if (potential.kind == "samples") {
    if (static_cast<int>(potential.samples.size()) != points)
      throw DomainError("SpatialModel: potential.samples must have one value per grid point");
    sm.potential = potential.samples;
  } else {
    throw DomainError("SpatialModel: unknown potential kind '" + potential.kind + "'");
  }
  sm.validate();
  return sm;
}

floquet::FourierHamiltonian spatial_hamiltonian(const SpatialModel& sm) {
  sm.validate();
  const int G = sm.points;
  const double c = sm.hbar * sm.hbar / (2.0 * sm.mass * sm.dx() * sm.dx());
  floquet::FourierHamiltonian H;
  H.omega = sm.omega;
  H.dim = G;
  CMatrix kinetic = CMatrix::Zero(G, G);
  CMatrix half_v = CMatrix::Zero(G, G);
  for (int j = 0; j < G; ++j) {
    kinetic(j, j) = 2.0 * c;
    if (j + 1 < G) kinetic(j, j + 1) = kinetic(j + 1, j) = -c;
    half_v(j, j) = 0.5 * sm.potential[j];
  }
  H.modes[0] = kinetic;
  H.modes[1] = half_v;
  H.modes[-1] = half_v;
  return H;
}

SpatialOperator spatial_assemble(const SpatialModel& sm, int N) {
  sm.validate();
  if (N < 2) throw DomainError("spatial_assemble: truncation N must be at least 2");
  const int G = sm.points;
  const double c = sm.hbar * sm.hbar / (2.0 * sm.mass * sm.dx() * sm.dx());

  SpatialOperator op;
  op.truncation = N;
  op.points = G;
  const Eigen::Index size = static_cast<Eigen::Index>(G) * op.bandwidth();
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(size) * 5);
  for (int j = 0; j < G; ++j) {
    for (int n = -N; n <= N; ++n) {
      const Eigen::Index row = op.index(j, n);
      entries.emplace_back(row, row, 2.0 * c + sm.hbar * sm.omega * n);
      if (j > 0) entries.emplace_back(row, op.index(j - 1, n), -c);
      if (j + 1 < G) entries.emplace_back(row, op.index(j + 1, n), -c);
      if (n > -N) entries.emplace_back(row, op.index(j, n - 1), 0.5 * sm.potential[j]);
      if (n < N) entries.emplace_back(row, op.index(j, n + 1), 0.5 * sm.potential[j]);
    }
  }
  op.matrix.resize(size, size);
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  return op;
}

std::vector<double> box_energies(const SpatialModel& sm) {
  const int G = sm.points;
  const double c = sm.hbar * sm.hbar / (2.0 * sm.mass * sm.dx() * sm.dx());
  std::vector<double> e(G);
  for (int k = 1; k <= G; ++k) e[k - 1] = 2.0 * c * (1.0 - std::cos(k * kPi / (G + 1)));
  return e;
}

double spatial_residual(const SpatialModel& sm, const floquet::FloquetSolution& sol) {
  const int G = sm.points;
  const double c = sm.hbar * sm.hbar / (2.0 * sm.mass * sm.dx() * sm.dx());
  double num = 0.0;
  double den = 0.0;
  for (int n = sol.n_lo; n <= sol.n_hi(); ++n) {
    const CVector cn = sol.coeff(n);
    const CVector up = sol.coeff(n + 1);
    const CVector down = sol.coeff(n - 1);
    for (int j = 0; j < G; ++j) {
      cplx lap = 2.0 * cn[j];
      if (j > 0) lap -= cn[j - 1];
      if (j + 1 < G) lap -= cn[j + 1];
      const cplx r = c * lap + 0.5 * sm.potential[j] * (up[j] + down[j]) +
                     sm.hbar * (sm.omega * n - sol.epsilon) * cn[j];
      num += std::norm(r);
    }
    den += cn.squaredNorm();
  }
  return std::sqrt(num / den);
}

std::vector<SpatialSolution> spatial_solve(const SpatialModel& sm, int N, int k_eigs) {
  if (k_eigs < 1) throw DomainError("spatial_solve: k_eigs must be positive");
  const SpatialOperator op = spatial_assemble(sm, N);
  const lapack_int n = static_cast<lapack_int>(op.matrix.rows());
  const lapack_int kd = op.bandwidth();
  const lapack_int ldab = kd + 1;
  const int G = sm.points;

  // upper band storage, column major: ab[kd + i - j + j*ldab] = A(i, j), i <= j
  std::vector<double> band(static_cast<std::size_t>(ldab) * n, 0.0);
  for (int col = 0; col < op.matrix.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.matrix, col); it; ++it)
      if (it.row() <= col) band[static_cast<std::size_t>(kd + it.row() - col + col * ldab)] = it.value();

  double v_max = 0.0;
  for (double v : sm.potential) v_max = std::max(v_max, std::abs(v));
  const std::vector<double> e = box_energies(sm);
  const double hw = sm.hbar * sm.omega;
  const double vl = e.front() - v_max - hw;
  double vu = e[static_cast<std::size_t>(std::min(k_eigs, G) - 1)] + v_max + hw;

  struct Candidate {
    double lambda;
    std::vector<double> vec;
  };
  std::vector<Candidate> central;
  for (int attempt = 0; attempt < 64; ++attempt) {
    // eigenvalues only; forming the band-reduction transform would cost O(n^3)
    std::vector<double> ab = band;
    std::vector<double> w(n);
    std::vector<lapack_int> ifail(n);
    lapack_int found = 0;
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    const lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'V', 'U', n, kd, ab.data(), ldab, nullptr, 1, vl, vu,
                                           0, 0, abstol, &found, w.data(), nullptr, 1, ifail.data());
    if (info != 0) throw ConvergenceError("spatial_solve: banded eigensolver failed, info = " + std::to_string(info));
    w.resize(static_cast<std::size_t>(found));

    const std::vector<std::vector<double>> vecs = band_inverse_iteration(op.matrix, kd, w);
    central.clear();
    for (std::size_t k = 0; k < vecs.size(); ++k) {
      const std::vector<double>& v = vecs[k];
      double centroid = 0.0;
      double total = 0.0;
      for (int j = 0; j < G; ++j)
        for (int h = -N; h <= N; ++h) {
          const double x = v[static_cast<std::size_t>(op.index(j, h))];
          centroid += h * x * x;
          total += x * x;
        }
      centroid /= total;
      if (centroid >= -0.5 && centroid < 0.5) central.push_back({w[k], v});
    }
    if (static_cast<int>(central.size()) >= k_eigs || found == n) break;
    vu += hw;
  }
  if (static_cast<int>(central.size()) < k_eigs)
    throw ConvergenceError("spatial_solve: found only " + std::to_string(central.size()) + " Floquet families");
  std::sort(central.begin(), central.end(), [](const Candidate& a, const Candidate& b) { return a.lambda < b.lambda; });

  std::vector<SpatialSolution> out;
  for (int k = 0; k < k_eigs; ++k) {
    const Candidate& cand = central[static_cast<std::size_t>(k)];
    floquet::FloquetSolution sol;
    sol.hbar = sm.hbar;
    sol.omega = sm.omega;
    sol.truncation = N;
    sol.epsilon = cand.lambda / sm.hbar;
    sol.n_lo = -N;
    double norm = 0.0;
    for (double a : cand.vec) norm += a * a;
    norm = std::sqrt(norm);
    for (int h = -N; h <= N; ++h) {
      CVector field(G);
      for (int j = 0; j < G; ++j) field[j] = cand.vec[static_cast<std::size_t>(op.index(j, h))] / norm;
      sol.coeffs.push_back(std::move(field));
    }
    const double folded = floquet::fold_quasienergy(sol.epsilon, sol.omega);
    floquet::shift_zone(sol, static_cast<int>(std::lround((sol.epsilon - folded) / sol.omega)));
    sol.epsilon = folded;
    floquet::fix_gauge(sol);

    SpatialSolution s;
    s.residual = spatial_residual(sm, sol);
    sol.residual = s.residual;
    s.solution = std::move(sol);
    out.push_back(std::move(s));
  }
  return out;
}

double perturbative_shift(const SpatialModel& sm, int level) {
  const int G = sm.points;
  if (level < 0 || level >= G) throw DomainError("perturbative_shift: level out of range");
  const std::vector<double> e = box_energies(sm);
  const auto mode = [G](int k, int j) { return std::sqrt(2.0 / (G + 1)) * std::sin((k + 1) * (j + 1) * kPi / (G + 1)); };
  const double hw = sm.hbar * sm.omega;
  double shift = 0.0;
  for (int k = 0; k < G; ++k) {
    double vkj = 0.0;
    for (int j = 0; j < G; ++j) vkj += mode(k, j) * sm.potential[j] * mode(level, j);
    const double coupling = 0.25 * vkj * vkj;
    for (double s : {1.0, -1.0}) shift += coupling / (e[level] - e[k] - s * hw);
  }
  return shift;
}

}  // namespace ffq::models
