#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ffq/cli.hpp"
#include "ffq/specfun.hpp"
#include "ffq/synthesis.hpp"

namespace fs = std::filesystem;
using namespace ffq;

namespace {

void print_value(cplx v, bool complex_input) {
  if (!complex_input && v.imag() == 0.0)
    std::printf("%.15f\n", v.real());
  else
    std::printf("%.15f %.15f\n", v.real(), v.imag());
}

void print_table(const cli::SweepTable& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) std::printf("%s%14s", c ? " " : "", t.columns[c].c_str());
  std::printf("\n");
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) std::printf("%s%14.6e", c ? " " : "", row[c]);
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Floquet toolkit"};
  app.set_version_flag("--version", cli::version());
  app.require_subcommand(1);
  unsigned long long seed = 0;
  app.add_option("--seed", seed, "Reserved; nothing is stochastic")->capture_default_str();

  // eval
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a special function or the subordination kernel");
  eval->require_subcommand(1);
  CLI::App* mlf = eval->add_subcommand("mlf", "Mittag-Leffler E_{a,b}(z)");
  double ml_a = 1.0, ml_b = 1.0, z_re = 0.0;
  std::optional<double> z_im;
  mlf->add_option("alpha", ml_a)->required();
  mlf->add_option("beta", ml_b)->required();
  mlf->add_option("zre", z_re)->required();
  mlf->add_option("zim", z_im);
  CLI::App* bes = eval->add_subcommand("bessel", "Bessel J_n(z)");
  int bes_n = 0;
  bes->add_option("n", bes_n)->required();
  bes->add_option("zre", z_re)->required();
  bes->add_option("zim", z_im);
  CLI::App* ker = eval->add_subcommand("kernel", "Subordination kernel K(xi, t) on [0, xi_max]");
  double k_alpha = 0.5, k_t = 1.0, k_xi = 8.0;
  std::size_t k_points = 801;
  std::string k_out;
  ker->add_option("alpha", k_alpha)->required();
  ker->add_option("t", k_t)->required();
  ker->add_option("xi_max", k_xi)->required();
  ker->add_option("points", k_points)->capture_default_str();
  ker->add_option("--out", k_out, "Directory for kernel.csv");

  // run
  CLI::App* run = app.add_subcommand("run", "Run a scenario from a JSON configuration");
  std::string config;
  std::string run_out;
  run->add_option("--config", config, "Scenario file")->required();
  run->add_option("--out", run_out, "Output directory (overrides output.dir)");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Run the acceptance checks");
  std::string tier = "fast";
  std::string verify_out;
  verify->add_option("--tier", tier, "fast or full")->capture_default_str();
  verify->add_option("--out", verify_out, "Directory for report.json");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Convergence studies");
  std::string sweep_kind;
  double sweep_alpha = 0.7;
  std::string sweep_out;
  sweep->add_option("kind", sweep_kind, "caputo, abm or truncation")
      ->required()
      ->check(CLI::IsMember({"caputo", "abm", "truncation"}));
  sweep->add_option("--alpha", sweep_alpha)->capture_default_str();
  sweep->add_option("--out", sweep_out, "Directory for the sweep CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }

  try {
    if (*eval) {
      if (*mlf) {
        print_value(specfun::mittag_leffler(ml_a, ml_b, cplx(z_re, z_im.value_or(0.0))), z_im.has_value());
      } else if (*bes) {
        print_value(specfun::bessel_j(bes_n, cplx(z_re, z_im.value_or(0.0))), z_im.has_value());
      } else {
        const synthesis::SubordinationKernel K = synthesis::subordination_kernel(k_t, k_alpha, k_xi, k_points);
        if (!k_out.empty()) {
          cli::write_kernel_csv(fs::path(k_out) / "kernel.csv", K);
        } else {
          for (std::size_t i = 0; i < K.xi.size(); ++i) std::printf("%.15f %.15f\n", K.xi[i], K.values[i]);
        }
      }
      return cli::kExitOk;
    }

    if (*run) {
      cli::Scenario sc;
      try {
        sc = cli::load_scenario(config);
      } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kExitConfig;
      }
      fs::path out = !run_out.empty()            ? fs::path(run_out)
                     : !sc.output_dir.empty()   ? fs::path(sc.output_dir)
                                                : fs::path("ffq-out") / (sc.name.empty() ? "scenario" : sc.name);
      const cli::RunReport report = cli::run_scenario(sc, out);
      for (const cli::CheckResult& c : report.checks) std::cout << c.summary() << "\n";
      std::cout << "wrote " << out.string() << "\n";
      return report.pass() ? cli::kExitOk : cli::kExitCheck;
    }

    if (*verify) {
      cli::Tier t;
      try {
        t = cli::parse_tier(tier);
      } catch (const cli::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return cli::kExitConfig;
      }
      const cli::RunReport report =
          cli::run_verification_suite(t, [](const cli::CheckResult& c) { std::cout << c.summary() << std::endl; });
      if (report.extra.contains("caputo_l1_convergence")) {
        std::cout << "caputo_l1 convergence (alpha = 0.7, E_a(i t^a), t in [0.1, 1])\n";
        std::printf("%14s %14s %14s\n", "h", "error", "order");
        for (const auto& row : report.extra["caputo_l1_convergence"]["rows"]) {
          std::printf("%14.6e %14.6e ", row["h"].get<double>(), row["error"].get<double>());
          if (row["order"].is_null())
            std::printf("%14s\n", "-");
          else
            std::printf("%14.4f\n", row["order"].get<double>());
        }
      }
      if (!verify_out.empty()) cli::write_report(fs::path(verify_out) / "report.json", report);
      return report.pass() ? cli::kExitOk : cli::kExitCheck;
    }

    if (*sweep) {
      cli::SweepTable table;
      if (sweep_kind == "caputo")
        table = cli::caputo_order_table(sweep_alpha, 0.02, 6);
      else if (sweep_kind == "abm")
        table = cli::abm_order_table(sweep_alpha, 2.0 * kPi, 128, 6);
      else
        table = cli::truncation_table(sweep_alpha, {4, 8, 16, 32, 64}, 1024, 1.0);
      print_table(table);
      if (!sweep_out.empty()) cli::write_sweep_csv(fs::path(sweep_out) / ("sweep_" + sweep_kind + ".csv"), table);
      return cli::kExitOk;
    }
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitRuntime;
  }
  return cli::kExitOk;
}
