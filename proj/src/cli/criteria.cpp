#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ffq/cli.hpp"
#include "ffq/fde.hpp"
#include "ffq/fraccalc.hpp"
#include "ffq/specfun.hpp"

namespace ffq::cli {
namespace {

bool full(Tier t) { return t == Tier::full; }

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

// 1. E_{1,1}(z) = e^z, E_{2,1}(-x^2) = cos x, E_{2,2}(-x^2) = sin(x)/x.
CheckResult mittag_leffler_reductions(Tier) {
  CheckResult r;
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double exp_err = 0.0;
  double route_rel = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx z = std::polar(10.0 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    const cplx e = std::exp(z);
    exp_err = std::max(exp_err, std::abs(specfun::mittag_leffler(1.0, 1.0, z) - e));
    // the general algorithm, bypassing the exponential shortcut
    const cplx g = std::abs(z) <= 1.0 ? specfun::detail::mlf_series(1.0, 1.0, z) : specfun::detail::mlf_contour(1.0, 1.0, z);
    route_rel = std::max(route_rel, std::abs(g - e) / std::abs(e));
  }
  double cos_err = 0.0;
  double sinc_err = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = 0.01 * i;
    const cplx z(-x * x, 0.0);
    cos_err = std::max(cos_err, std::abs(specfun::mittag_leffler(2.0, 1.0, z) - std::cos(x)));
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    sinc_err = std::max(sinc_err, std::abs(specfun::mittag_leffler(2.0, 2.0, z) - sinc));
  }
  r.parts = {{"exp_abs", exp_err, 1e-10},
             {"cos_abs", cos_err, 1e-10},
             {"sinc_abs", sinc_err, 1e-10},
             {"exp_general_route_rel", route_rel, 0.0, false, true}};
  r.detail = "100 seeded points with |z| <= 10; x on a 0.01 grid over [0, 10]";
  return r;
}

// 2. L1 Caputo of E_a(i t^a) against i E_a(i t^a) under two step halvings.
CheckResult caputo_eigenfunction_order(Tier) {
  CheckResult r;
  const SweepTable t = caputo_order_table(0.7, 0.01, 3);
  const double order = std::min(t.rows[1][2], t.rows[2][2]);
  r.parts = {{"observed_order", order, 1.2, true}, {"error_finest", t.rows[2][1], 0.0, false, true}};
  r.detail = "alpha = 0.7, h = 1e-2 / 2^k, errors " + fmt(t.rows[0][1]) + ", " + fmt(t.rows[1][1]) + ", " +
             fmt(t.rows[2][1]) + " on t in [0.1, 1]";
  return r;
}

// 3. alpha = 1 synthesis against the closed-form classical evolution.
CheckResult alpha_one_reduction(Tier tier) {
  CheckResult r;
  const models::ToyModel tm;
  synthesis::FftParams p;
  p.alpha = 1.0;
  p.solution = models::toy_coefficients(tm, 32);
  const int n = full(tier) ? 3000 : 600;
  const double T = tm.period();
  double dev = 0.0;
  double floquet_dev = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = 3.0 * T * k / n;
    const cplx psi = synthesis::synthesize(p, t)[0];
    dev = std::max(dev, std::abs(psi - models::toy_classical_state(tm, t)));
    floquet_dev = std::max(floquet_dev, std::abs(psi - p.solution.state(t)[0]));
  }
  r.parts = {{"vs_closed_form", dev, 1e-9}, {"vs_floquet_form", floquet_dev, 1e-9}};
  r.detail = "toy e0 = hbar = omega = 1, N = 32, " + std::to_string(n + 1) + " points on [0, 3T]";
  return r;
}

// 4. Fractional synthesis against the fractional Adams integrator.
CheckResult fractional_synthesis_vs_abm(Tier tier) {
  CheckResult r;
  const models::ToyModel tm;
  const floquet::FourierHamiltonian H = models::toy_hamiltonian(tm);
  const double alpha = 0.8;
  const int div = full(tier) ? 4096 : 1024;
  fde::FdeProblem p;
  p.alpha = alpha;
  p.rhs = fde::schrodinger_rhs([&H](double t) { return H.at(t); }, alpha, 1.0);
  p.psi0 = CVector::Ones(1);
  p.h = tm.period() / div;
  p.steps = 2 * static_cast<std::size_t>(div);
  const Trajectory direct = fde::solve_ftse_direct(p).trajectory;

  const std::size_t stride = full(tier) ? 4 : 8;
  std::vector<double> devs;
  for (int N : {16, 32, 64}) {
    synthesis::FftParams fp;
    fp.alpha = alpha;
    fp.solution = models::toy_coefficients(tm, N);
    double dev = 0.0;
    for (std::size_t k = 0; k < direct.size(); k += stride)
      dev = std::max(dev, std::abs(synthesis::synthesize(fp, direct.time(k))[0] - direct.states[k][0]));
    devs.push_back(dev);
  }
  const double ratio = std::max(devs[1] / devs[0], devs[2] / devs[1]);
  r.parts = {{"max_deviation_N64", devs[2], 1e-3},
             // strictly decreasing means every successive ratio is below one
             {"max_successive_ratio", ratio, 1.0 - 1e-12}};
  r.detail = "alpha = 0.8, t in [0, 2T], h = T/" + std::to_string(div) + "; deviations N=16,32,64: " + fmt(devs[0]) +
             ", " + fmt(devs[1]) + ", " + fmt(devs[2]);
  return r;
}

// 5. Bessel coefficients of the toy model.
CheckResult toy_bessel_coefficients(Tier) {
  CheckResult r;
  const models::ToyModel tm;
  const floquet::FourierHamiltonian H = models::toy_hamiltonian(tm);
  const floquet::FloquetSolution sol = models::toy_coefficients(tm, 64);
  double lattice = 0.0;
  for (int n = -20; n <= 20; ++n) {
    CVector acc = -sol.hbar * (sol.epsilon - sol.omega * n) * sol.coeff(n);
    for (const auto& [m, hm] : H.modes) acc += hm * sol.coeff(n - m);
    lattice = std::max(lattice, acc.norm());
  }
  const double z = tm.drive();
  const std::vector<cplx> j = specfun::bessel_j_sequence(41, z);
  double rec = 0.0;
  for (int n = 1; n <= 40; ++n) rec = std::max(rec, std::abs(z * (j[n + 1] + j[n - 1]) - 2.0 * n * j[n]));
  r.parts = {{"lattice_residual", lattice, 1e-10}, {"recurrence_residual", rec, 1e-12}};
  r.detail = "N = 64, e0/(hbar omega) = 1, |n| <= 20; recurrence for n = 1..40";
  return r;
}

// 6. Caputo derivative of e^{i l t} against t^{-mu} E_{1,1-mu}(i l t).
CheckResult caputo_exponential_identity(Tier) {
  CheckResult r;
  const fraccalc::ExponentialIdentityReport rep = fraccalc::caputo_of_exponential_identity(2.0 * kPi, 0.5, 1e-3, 0.1, 2.0);
  r.parts = {{"caputo_vs_target", rep.caputo_vs_target, 1e-3},
             {"rl_derivative_vs_target", rep.rl_derivative_vs_target, 0.0, false, true},
             {"rl_integral_vs_laplace_form", rep.rl_integral_vs_laplace, 0.0, false, true}};
  r.detail = "l = 2 pi, mu = 0.5, h = 1e-3, t in [0.1, 2]; the target carries the boundary term of the "
             "Riemann-Liouville derivative, which the Caputo derivative of e^{ilt} lacks";
  return r;
}

// 7. Symmetric GL quadrature on plane waves of a 2 pi periodic function.
CheckResult riesz_gl_periodicity(Tier tier) {
  CheckResult r;
  const int M = 8;
  double leak = 0.0;
  double lam_rel = 0.0;
  fraccalc::GlQuadratureConfig cfg;
  if (!full(tier)) cfg.cutoff = 1e4;
  for (double mu : {0.5, 1.5}) {
    for (int l : {1, 2}) {
      const auto f = [l](double x) { return std::exp(kI * (static_cast<double>(l) * x)); };
      std::vector<cplx> g(M);
      for (int k = 0; k < M; ++k) g[k] = fraccalc::grunwald_letnikov_symmetric(f, mu, 2.0 * kPi * k / M, cfg);
      // discrete Fourier coefficients of the output
      for (int q = -M / 2 + 1; q <= M / 2; ++q) {
        cplx c = 0.0;
        for (int k = 0; k < M; ++k) c += g[k] * std::exp(-kI * (2.0 * kPi * q * k / M));
        c /= static_cast<double>(M);
        if (q == l) {
          const double target = -std::pow(static_cast<double>(l), mu);
          lam_rel = std::max(lam_rel, std::abs(c - target) / std::abs(target));
        } else {
          leak = std::max(leak, std::abs(c));
        }
      }
    }
  }
  r.parts = {{"off_mode_leakage", leak, 1e-8}, {"multiplier_rel", lam_rel, 1e-6}};
  r.detail = "period 2 pi, mu in {0.5, 1.5}, l in {1, 2}, " + std::to_string(M) + " sample points, cutoff " + fmt(cfg.cutoff);
  return r;
}

// 8. Fourier reconstruction of E_a(i a t^a) from the subordination kernel.
CheckResult subordination_reconstruction(Tier tier) {
  CheckResult r;
  const double alpha = 0.6;
  const double t = 1.0;
  synthesis::KernelOptions opts;
  opts.eta = 1e-4;
  const std::size_t n_xi = full(tier) ? 3201 : 1601;
  const synthesis::SubordinationKernel K = synthesis::subordination_kernel(t, alpha, 8.0, n_xi, opts);
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double a = -5.0 + 0.1 * i;
    const cplx exact = specfun::mittag_leffler(alpha, kI * (a * std::pow(t, alpha)));
    worst = std::max(worst, std::abs(synthesis::reconstruct(K, a) - exact) / std::abs(exact));
  }
  const double norm = std::abs(synthesis::reconstruct(K, 0.0) - 1.0);
  r.parts = {{"max_relative_error", worst, 1e-2}, {"normalization_defect", norm, 1e-3}};
  r.detail = "alpha = 0.6, t = 1, eta = 1e-4, xi in [0, 8] with " + std::to_string(n_xi) + " points, a on a 0.1 grid";
  return r;
}

// 9. Kernel-weighted unitary evolution against direct fractional synthesis.
CheckResult subordinated_vs_direct(Tier tier) {
  CheckResult r;
  const models::ToyModel tm;
  const double alpha = 0.6;
  const double t = tm.period();
  const double xi_max = 6.0 * std::pow(t, alpha);
  const std::size_t n_xi = full(tier) ? 2401 : 1201;
  const synthesis::SubordinationKernel K = synthesis::subordination_kernel(t, alpha, xi_max, n_xi);
  synthesis::FftParams p;
  p.alpha = alpha;
  p.solution = models::toy_coefficients(tm, 32);
  const CVector direct = synthesis::synthesize(p, t);
  const CVector sub = synthesis::subordinated_synthesize(K, p.solution, tm.hbar);
  r.parts = {{"relative_difference", (sub - direct).norm() / direct.norm(), 2e-2}};
  r.detail = "toy model, alpha = 0.6, t = T, xi in [0, " + fmt(xi_max) + "] with " + std::to_string(n_xi) + " points";
  return r;
}

// 10. Particle in a box under V0 cos(k x) cos(omega t).
CheckResult spatial_model(Tier tier) {
  CheckResult r;
  const double L = 2.0 * kPi;
  const double omega = 1.3;
  const models::PotentialSpec pot{"cosine", 0.5, 2.0, 0.0, {}};
  const models::SpatialModel sm = models::make_spatial_model(1.0, 1.0, omega, 0.0, L, 128, pot);
  const std::vector<models::SpatialSolution> sols = models::spatial_solve(sm, 16, 4);
  double res = 0.0;
  for (const auto& s : sols) res = std::max(res, s.residual);

  // small instance against the dense Hermitian eigensolver
  const models::SpatialModel small = models::make_spatial_model(1.0, 1.0, omega, 0.0, L, 16, pot);
  const std::vector<floquet::FloquetSolution> dense =
      floquet::solve_quasienergies(floquet::build_floquet_matrix(models::spatial_hamiltonian(small), 2, 1.0));
  const std::vector<models::SpatialSolution> band = models::spatial_solve(small, 2, static_cast<int>(dense.size()));
  double match = 0.0;
  for (const auto& b : band) {
    const floquet::FloquetSolution* best = nullptr;
    for (const auto& d : dense)
      if (!best || std::abs(d.epsilon - b.solution.epsilon) < std::abs(best->epsilon - b.solution.epsilon)) best = &d;
    match = std::max(match, std::abs(best->epsilon - b.solution.epsilon));
    const int lo = std::min(best->n_lo, b.solution.n_lo);
    const int hi = std::max(best->n_hi(), b.solution.n_hi());
    for (int n = lo; n <= hi; ++n) match = std::max(match, (best->coeff(n) - b.solution.coeff(n)).lpNorm<Eigen::Infinity>());
  }
  const bool counts = band.size() == dense.size();

  synthesis::FftParams p;
  p.alpha = 0.8;
  p.solution = sols.front().solution;
  const double T = 2.0 * kPi / omega;
  const int div = full(tier) ? 2048 : 1024;
  const Trajectory traj = synthesis::synthesize_trajectory(p, T / div, static_cast<std::size_t>(div));
  const double fres = synthesis::ftse_residual(traj, models::spatial_hamiltonian(sm), 0.8, 1.0);

  r.parts = {{"max_eigen_residual", res, 1e-8},
             {"dense_match", counts ? match : std::numeric_limits<double>::infinity(), 1e-10},
             {"fractional_ftse_residual", fres, 1e-2}};
  r.detail = "box [0, 2 pi], 128 points, N = 16, V = 0.5 cos(2x), omega = 1.3; small instance 16 points, N = 2 (" +
             std::to_string(band.size()) + " of " + std::to_string(dense.size()) + " families); alpha = 0.8, h = T/" +
             std::to_string(div);
  return r;
}

// 11. Self-checks of the fractional Adams integrator.
CheckResult abm_self_checks(Tier) {
  CheckResult r;
  const models::ToyModel tm;
  const floquet::FourierHamiltonian H = models::toy_hamiltonian(tm);
  const double T = tm.period();

  fde::FdeProblem p;
  p.alpha = 1.0;
  p.rhs = fde::schrodinger_rhs([&H](double t) { return H.at(t); }, 1.0, 1.0);
  p.psi0 = CVector::Ones(1);
  const int div = 32768;
  p.h = T / div;
  p.steps = 3 * static_cast<std::size_t>(div);
  const Trajectory cls = fde::solve_ftse_direct(p).trajectory;
  double norm_dev = 0.0;
  for (const CVector& s : cls.states) norm_dev = std::max(norm_dev, std::abs(s.norm() - 1.0));

  double order_dev = 0.0;
  std::string orders;
  for (double alpha : {0.5, 0.8}) {
    const SweepTable t = abm_order_table(alpha, T, 512, 3);
    const double q = t.rows.back()[2];
    order_dev = std::max(order_dev, std::abs(q - (1.0 + alpha)));
    orders += (orders.empty() ? "" : ", ") + std::string("alpha ") + fmt(alpha) + ": " + fmt(q);
  }

  const double a = 0.7;
  const double e = 1.0;
  fde::FdeProblem q;
  q.alpha = a;
  q.rhs = fde::schrodinger_rhs([e](double) { return CMatrix::Constant(1, 1, e); }, a, 1.0);
  q.psi0 = CVector::Ones(1);
  q.h = T / 4096;
  q.steps = 4096;
  const Trajectory ti = fde::solve_ftse_direct(q).trajectory;
  double ti_dev = 0.0;
  for (std::size_t k = 0; k < ti.size(); ++k)
    ti_dev = std::max(ti_dev, std::abs(ti.states[k][0] - specfun::mittag_leffler(a, -kI * (e * std::pow(ti.time(k), a)))));

  r.parts = {{"alpha_one_norm_drift", norm_dev, 1e-8},
             {"order_offset", order_dev, 0.2},
             {"time_independent_error", ti_dev, 1e-4}};
  r.detail = "norm over [0, 3T] with h = T/" + std::to_string(div) + "; observed orders " + orders +
             "; H = 1, alpha = 0.7, h = T/4096 over [0, T]";
  return r;
}

}  // namespace

Tier parse_tier(const std::string& s) {
  if (s == "fast") return Tier::fast;
  if (s == "full") return Tier::full;
  throw ConfigError("--tier: expected fast or full, got \"" + s + "\"");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "mittag_leffler_reductions", mittag_leffler_reductions},
      {2, "caputo_eigenfunction_order", caputo_eigenfunction_order},
      {3, "alpha_one_reduction", alpha_one_reduction},
      {4, "fractional_synthesis_vs_abm", fractional_synthesis_vs_abm},
      {5, "toy_bessel_coefficients", toy_bessel_coefficients},
      {6, "caputo_exponential_identity", caputo_exponential_identity},
      {7, "riesz_gl_periodicity", riesz_gl_periodicity},
      {8, "subordination_reconstruction", subordination_reconstruction},
      {9, "subordinated_vs_direct", subordinated_vs_direct},
      {10, "spatial_model", spatial_model},
      {11, "abm_self_checks", abm_self_checks},
  };
  return list;
}

CheckResult run_criterion(const Criterion& c, Tier tier) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = c.run(tier);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.name = c.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

RunReport run_verification_suite(Tier tier, const std::function<void(const CheckResult&)>& on_result) {
  RunReport report;
  report.scenario = {{"suite", "verify"}, {"tier", full(tier) ? "full" : "fast"}};
  const auto t0 = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria()) {
    report.checks.push_back(run_criterion(c, tier));
    report.timings.emplace_back(c.name, report.checks.back().seconds);
    if (on_result) on_result(report.checks.back());
  }
  if (full(tier)) {
    const SweepTable t = caputo_order_table(0.7, 0.02, 6);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) rows.push_back({{"h", row[0]}, {"error", row[1]}, {"order", std::isnan(row[2]) ? nlohmann::json() : nlohmann::json(row[2])}});
    report.extra["caputo_l1_convergence"] = {{"alpha", 0.7}, {"rows", rows}};
  }
  report.timings.emplace_back("total", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return report;
}

}  // namespace ffq::cli
