#pragma once

// Scenario runner, verification suite and output writers behind the ffq tool.

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffq/core.hpp"
#include "ffq/models.hpp"
#include "ffq/synthesis.hpp"

namespace ffq::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCheck = 3;

std::string version();

// Configuration problem; the message starts with the JSON path (or line and
// column for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- scenario ---------------------------------------------------------------

struct GridSpec {
  int steps_per_period = 1024;
  double periods = 1.0;
};

struct KernelSpec {
  double t = 1.0;
  double xi_max = 8.0;
  std::size_t points = 1601;
};

struct Scenario {
  std::string name;
  std::string kind;  // toy | spatial | custom-modes
  double alpha = 1.0;
  std::vector<int> truncations;
  double hbar = 1.0;
  double omega = 1.0;

  models::ToyModel toy;
  models::SpatialModel spatial;
  floquet::FourierHamiltonian custom;
  // which Floquet family to synthesize (spatial and custom-modes)
  int level = 0;

  GridSpec grid;
  bool direct_oracle = false;
  std::optional<KernelSpec> kernel;
  std::map<std::string, double> tolerances;
  std::string output_dir;
  nlohmann::json echo;

  [[nodiscard]] double tolerance(const std::string& check) const;
  [[nodiscard]] double period() const { return 2.0 * kPi / omega; }
};

// Tolerance names accepted under "tolerances" with their defaults.
const std::map<std::string, double>& default_tolerances();

/// Validates everything before any computation; throws ConfigError.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

// ---- reports ----------------------------------------------------------------

struct Measurement {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  // value >= tol passes instead of value <= tol
  bool at_least = false;
  // reported for context, does not decide the outcome
  bool informational = false;

  [[nodiscard]] bool pass() const;
};

struct CheckResult {
  std::string name;
  std::vector<Measurement> parts;
  std::string detail;
  double seconds = 0.0;
  // set when the check threw instead of producing a value
  std::string error;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] std::string summary() const;
};

struct RunReport {
  nlohmann::json scenario;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, double>> timings;
  nlohmann::json extra = nlohmann::json::object();

  [[nodiscard]] bool pass() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
void write_residual_csv(const std::filesystem::path& path, const std::vector<std::pair<std::string, double>>& rows);
void write_kernel_csv(const std::filesystem::path& path, const synthesis::SubordinationKernel& K);
void write_report(const std::filesystem::path& path, const RunReport& report);

/// solve -> synthesize -> residual -> oracle comparison; writes
/// trajectory_N<N>.csv, residual.csv, optionally kernel.csv, and report.json.
RunReport run_scenario(const Scenario& sc, const std::filesystem::path& out_dir);

// ---- verification suite -----------------------------------------------------

enum class Tier { fast, full };

Tier parse_tier(const std::string& s);

struct Criterion {
  int id = 0;
  std::string name;
  std::function<CheckResult(Tier)> run;
};

const std::vector<Criterion>& criteria();

/// Runs one criterion, timing it and turning exceptions into a failed check.
CheckResult run_criterion(const Criterion& c, Tier tier);

RunReport run_verification_suite(Tier tier, const std::function<void(const CheckResult&)>& on_result = {});

// ---- convergence sweeps -----------------------------------------------------

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Caputo L1 applied to E_alpha(i t^alpha) against i E_alpha(i t^alpha), max over
/// t in [0.1, 1], under repeated step halving. Columns h, error, order.
SweepTable caputo_order_table(double alpha, double h0, int levels);

/// Fractional Adams error at t = T for psi' ~ -i psi against E_alpha(-i T^alpha).
/// Columns h, error, order.
SweepTable abm_order_table(double alpha, double T, int first_divisions, int levels);

/// Toy model: ftse_residual and deviation from the direct integrator per N.
/// Columns N, ftse_residual, direct_deviation.
SweepTable truncation_table(double alpha, const std::vector<int>& truncations, int steps_per_period, double periods);

void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table);

}  // namespace ffq::cli
