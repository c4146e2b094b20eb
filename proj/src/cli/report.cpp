#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ffq/cli.hpp"

#ifndef FFQ_VERSION
#define FFQ_VERSION "unknown"
#endif

namespace ffq::cli {

std::string version() { return FFQ_VERSION; }

bool Measurement::pass() const {
  if (informational) return true;
  if (!std::isfinite(value)) return false;
  return at_least ? value >= tol : value <= tol;
}

bool CheckResult::pass() const {
  if (!error.empty() || parts.empty()) return false;
  for (const Measurement& m : parts)
    if (!m.pass()) return false;
  return true;
}

std::string CheckResult::summary() const {
  std::ostringstream out;
  out << (pass() ? "PASS " : "FAIL ") << name;
  if (!error.empty()) out << " error: " << error;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Measurement& m = parts[i];
    out << (i == 0 ? " " : "; ") << m.name << "=" << std::setprecision(3) << std::scientific << m.value;
    if (m.informational)
      out << " (info)";
    else
      out << (m.at_least ? " (min " : " (tol ") << m.tol << ")";
  }
  out << std::fixed << std::setprecision(1) << " [" << seconds << " s]";
  return out.str();
}

bool RunReport::pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass()) return false;
  return true;
}

nlohmann::json RunReport::to_json() const {
  using nlohmann::json;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["library_version"] = version();
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream stamp;
  stamp << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  j["generated_at"] = stamp.str();
  j["scenario"] = scenario;
  j["pass"] = pass();
  json arr = json::array();
  for (const CheckResult& c : checks) {
    json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass();
    cj["seconds"] = c.seconds;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    if (!c.error.empty()) cj["error"] = c.error;
    json parts = json::array();
    for (const Measurement& m : c.parts) {
      json pj;
      pj["name"] = m.name;
      // JSON has no infinity or NaN
      pj["value"] = std::isfinite(m.value) ? json(m.value) : json(format_double(m.value));
      pj["tolerance"] = m.tol;
      pj["comparison"] = m.informational ? "info" : (m.at_least ? ">=" : "<=");
      pj["pass"] = m.pass();
      parts.push_back(pj);
    }
    cj["measurements"] = parts;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  json t = json::object();
  for (const auto& [name, sec] : timings) t[name] = sec;
  j["timings"] = t;
  if (!extra.empty()) j["extra"] = extra;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out = open_out(path);
  out << "t,idx,re,im\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const std::string t = format_double(traj.time(k));
    const CVector& s = traj.states[k];
    for (Eigen::Index i = 0; i < s.size(); ++i)
      out << t << ',' << i << ',' << format_double(s[i].real()) << ',' << format_double(s[i].imag()) << '\n';
  }
}

void write_residual_csv(const std::filesystem::path& path, const std::vector<std::pair<std::string, double>>& rows) {
  std::ofstream out = open_out(path);
  out << "param,value\n";
  for (const auto& [param, value] : rows) out << param << ',' << format_double(value) << '\n';
}

void write_kernel_csv(const std::filesystem::path& path, const synthesis::SubordinationKernel& K) {
  std::ofstream out = open_out(path);
  out << "xi,re,im\n";
  for (std::size_t i = 0; i < K.xi.size(); ++i) out << format_double(K.xi[i]) << ',' << format_double(K.values[i]) << ",0\n";
}

void write_report(const std::filesystem::path& path, const RunReport& report) {
  std::ofstream out = open_out(path);
  out << report.to_json().dump(2) << '\n';
}

void write_sweep_csv(const std::filesystem::path& path, const SweepTable& table) {
  std::ofstream out = open_out(path);
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

}  // namespace ffq::cli
