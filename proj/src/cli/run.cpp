#include <chrono>
#include <cmath>

#include "ffq/cli.hpp"
#include "ffq/fde.hpp"
#include "ffq/fraccalc.hpp"
#include "ffq/specfun.hpp"

namespace ffq::cli {
namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

floquet::FourierHamiltonian scenario_hamiltonian(const Scenario& sc) {
  if (sc.kind == "toy") return models::toy_hamiltonian(sc.toy);
  if (sc.kind == "spatial") return models::spatial_hamiltonian(sc.spatial);
  return sc.custom;
}

// Floquet solution for truncation N together with its eigen-equation residual.
std::pair<floquet::FloquetSolution, double> scenario_solution(const Scenario& sc, int N) {
  if (sc.kind == "toy") {
    floquet::FloquetSolution sol = models::toy_coefficients(sc.toy, N);
    const double r = sol.residual;
    return {std::move(sol), r};
  }
  if (sc.kind == "spatial") {
    std::vector<models::SpatialSolution> sols = models::spatial_solve(sc.spatial, N, sc.level + 1);
    if (static_cast<int>(sols.size()) <= sc.level) throw ConvergenceError("spatial_solve returned too few families");
    models::SpatialSolution& s = sols[static_cast<std::size_t>(sc.level)];
    return {std::move(s.solution), s.residual};
  }
  std::vector<floquet::FloquetSolution> sols =
      floquet::solve_quasienergies(floquet::build_floquet_matrix(sc.custom, N, sc.hbar));
  if (static_cast<int>(sols.size()) <= sc.level) throw ConvergenceError("fewer Floquet families than requested level");
  floquet::FloquetSolution& s = sols[static_cast<std::size_t>(sc.level)];
  const double r = s.residual;
  return {std::move(s), r};
}

double max_state_norm(const Trajectory& traj) {
  double m = 0.0;
  for (const CVector& s : traj.states) m = std::max(m, s.norm());
  return m;
}

}  // namespace

RunReport run_scenario(const Scenario& sc, const std::filesystem::path& out_dir) {
  RunReport report;
  report.scenario = sc.echo;
  const auto start = std::chrono::steady_clock::now();
  const floquet::FourierHamiltonian H = scenario_hamiltonian(sc);
  const double T = sc.period();
  const double h = T / sc.grid.steps_per_period;
  const auto steps = static_cast<std::size_t>(std::llround(sc.grid.periods * sc.grid.steps_per_period));

  std::vector<std::pair<std::string, double>> rows;
  std::vector<double> residuals;
  std::filesystem::create_directories(out_dir);

  for (int N : sc.truncations) {
    const std::string tag = "_N" + std::to_string(N);
    CheckResult check;
    check.name = "pipeline" + tag;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [sol, eig_res] = scenario_solution(sc, N);
      for (const std::string& w : sol.warnings) check.detail += (check.detail.empty() ? "" : "; ") + w;
      report.timings.emplace_back("solve" + tag, seconds_since(t0));
      check.parts.push_back({"eigen_residual", eig_res, sc.tolerance("eigen_residual")});
      rows.emplace_back("eigen_residual" + tag, eig_res);
      rows.emplace_back("quasienergy" + tag, sol.epsilon);

      synthesis::FftParams fp;
      fp.alpha = sc.alpha;
      fp.hbar = sc.hbar;
      fp.solution = sol;
      auto t1 = std::chrono::steady_clock::now();
      const Trajectory traj = synthesis::synthesize_trajectory(fp, h, steps);
      report.timings.emplace_back("synthesize" + tag, seconds_since(t1));
      write_trajectory_csv(out_dir / ("trajectory" + tag + ".csv"), traj);

      t1 = std::chrono::steady_clock::now();
      const double res = synthesis::ftse_residual(traj, H, sc.alpha, sc.hbar);
      report.timings.emplace_back("residual" + tag, seconds_since(t1));
      check.parts.push_back({"ftse_residual", res, sc.tolerance("ftse_residual")});
      rows.emplace_back("ftse_residual" + tag, res);
      residuals.push_back(res);

      if (sc.alpha == 1.0 && sc.kind == "toy") {
        double dev = 0.0;
        for (std::size_t k = 0; k < traj.size(); ++k)
          dev = std::max(dev, std::abs(traj.states[k][0] - models::toy_classical_state(sc.toy, traj.time(k))));
        check.parts.push_back({"alpha_one_reduction", dev, sc.tolerance("alpha_one_reduction")});
        rows.emplace_back("alpha_one_reduction" + tag, dev);
      }

      if (sc.direct_oracle) {
        t1 = std::chrono::steady_clock::now();
        fde::FdeProblem p;
        p.alpha = sc.alpha;
        p.rhs = fde::schrodinger_rhs([&H](double t) { return H.at(t); }, sc.alpha, sc.hbar);
        p.psi0 = traj.states.front();
        p.h = h;
        p.steps = steps;
        const Trajectory direct = fde::solve_ftse_direct(p).trajectory;
        double dev = 0.0;
        for (std::size_t k = 0; k < traj.size(); ++k) dev = std::max(dev, (traj.states[k] - direct.states[k]).norm());
        dev /= max_state_norm(direct);
        report.timings.emplace_back("direct_oracle" + tag, seconds_since(t1));
        check.parts.push_back({"direct_oracle", dev, sc.tolerance("direct_oracle")});
        rows.emplace_back("direct_oracle" + tag, dev);
      }
    } catch (const std::exception& e) {
      check.error = e.what();
    }
    check.seconds = seconds_since(t0);
    report.checks.push_back(std::move(check));
  }

  if (sc.truncations.size() > 1 && residuals.size() == sc.truncations.size()) {
    CheckResult mono;
    mono.name = "ftse_residual_decreases_with_N";
    double worst = 0.0;
    for (std::size_t i = 1; i < residuals.size(); ++i) worst = std::max(worst, residuals[i] / residuals[i - 1]);
    mono.parts.push_back({"max_successive_ratio", worst, 1.0});
    mono.detail = "ratio of ftse_residual between successive truncations";
    report.checks.push_back(std::move(mono));
  }

  if (sc.kernel) {
    CheckResult kc;
    kc.name = "subordination_kernel";
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const synthesis::SubordinationKernel K =
          synthesis::subordination_kernel(sc.kernel->t, sc.alpha, sc.kernel->xi_max, sc.kernel->points);
      write_kernel_csv(out_dir / "kernel.csv", K);
      const double mass = std::abs(synthesis::reconstruct(K, 0.0) - 1.0);
      kc.parts.push_back({"normalization_defect", mass, 0.0, false, true});
      rows.emplace_back("kernel_normalization_defect", mass);
    } catch (const std::exception& e) {
      kc.error = e.what();
    }
    kc.seconds = seconds_since(t0);
    report.timings.emplace_back("kernel", kc.seconds);
    report.checks.push_back(std::move(kc));
  }

  write_residual_csv(out_dir / "residual.csv", rows);
  report.timings.emplace_back("total", seconds_since(start));
  write_report(out_dir / "report.json", report);
  return report;
}

// ---- sweeps -----------------------------------------------------------------

SweepTable caputo_order_table(double alpha, double h0, int levels) {
  SweepTable table{{"h", "error", "order"}, {}};
  double prev = 0.0;
  for (int l = 0; l < levels; ++l) {
    const double h = h0 / std::pow(2.0, l);
    const auto count = static_cast<std::size_t>(std::llround(1.0 / h)) + 1;
    const auto f = [alpha](double t) { return specfun::mittag_leffler(alpha, kI * std::pow(t, alpha)); };
    const fraccalc::UniformGridFn g = fraccalc::sample(f, 0.0, h, count);
    const fraccalc::UniformGridFn d = fraccalc::caputo_l1(g, alpha);
    double err = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d.defined(k) && d.time(k) >= 0.1 - 1e-12) err = std::max(err, std::abs(d.values[k] - kI * g.values[k]));
    table.rows.push_back({h, err, l == 0 ? std::nan("") : std::log2(prev / err)});
    prev = err;
  }
  return table;
}

SweepTable abm_order_table(double alpha, double T, int first_divisions, int levels) {
  SweepTable table{{"h", "error", "order"}, {}};
  const cplx exact = specfun::mittag_leffler(alpha, -kI * std::pow(T, alpha));
  double prev = 0.0;
  for (int l = 0; l < levels; ++l) {
    const int div = first_divisions << l;
    fde::FdeProblem p;
    p.alpha = alpha;
    p.rhs = fde::schrodinger_rhs([](double) { return CMatrix::Constant(1, 1, 1.0); }, alpha, 1.0);
    p.psi0 = CVector::Ones(1);
    p.h = T / div;
    p.steps = static_cast<std::size_t>(div);
    const double err = std::abs(fde::solve_ftse_direct(p).trajectory.states.back()[0] - exact);
    table.rows.push_back({p.h, err, l == 0 ? std::nan("") : std::log2(prev / err)});
    prev = err;
  }
  return table;
}

SweepTable truncation_table(double alpha, const std::vector<int>& truncations, int steps_per_period, double periods) {
  SweepTable table{{"N", "ftse_residual", "direct_deviation"}, {}};
  const models::ToyModel tm;
  const floquet::FourierHamiltonian H = models::toy_hamiltonian(tm);
  const double h = tm.period() / steps_per_period;
  const auto steps = static_cast<std::size_t>(std::llround(periods * steps_per_period));

  fde::FdeProblem p;
  p.alpha = alpha;
  p.rhs = fde::schrodinger_rhs([&H](double t) { return H.at(t); }, alpha, tm.hbar);
  p.psi0 = CVector::Ones(1);
  p.h = h;
  p.steps = steps;
  const Trajectory direct = fde::solve_ftse_direct(p).trajectory;

  for (int N : truncations) {
    synthesis::FftParams fp;
    fp.alpha = alpha;
    fp.hbar = tm.hbar;
    fp.solution = models::toy_coefficients(tm, N);
    const Trajectory traj = synthesis::synthesize_trajectory(fp, h, steps);
    double dev = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) dev = std::max(dev, std::abs(traj.states[k][0] - direct.states[k][0]));
    table.rows.push_back({static_cast<double>(N), synthesis::ftse_residual(traj, H, alpha, tm.hbar), dev});
  }
  return table;
}

}  // namespace ffq::cli
