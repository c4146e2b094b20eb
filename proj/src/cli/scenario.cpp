#include <fstream>
#include <set>
#include <sstream>

#include "ffq/cli.hpp"

namespace ffq::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

const json& require(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail(path + "/" + key, "required field is missing");
  return obj.at(key);
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(path + "/" + key, "unknown field");
}

const json& object_at(const json& obj, const std::string& path, const std::string& key) {
  const json& v = require(obj, path, key);
  if (!v.is_object()) fail(path + "/" + key, "expected an object");
  return v;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

double number_or(const json& obj, const std::string& path, const std::string& key, double fallback) {
  return obj.contains(key) ? number(obj.at(key), path + "/" + key) : fallback;
}

int integer_or(const json& obj, const std::string& path, const std::string& key, int fallback) {
  return obj.contains(key) ? integer(obj.at(key), path + "/" + key) : fallback;
}

double positive(double v, const std::string& path) {
  if (!(v > 0.0)) fail(path, "must be positive");
  return v;
}

CMatrix matrix_from(const json& re, const json* im, Eigen::Index dim, const std::string& path) {
  CMatrix out(dim, dim);
  const auto read = [&](const json& rows, const std::string& p, bool imag) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim)
      fail(p, "expected " + std::to_string(dim) + " rows");
    for (Eigen::Index r = 0; r < dim; ++r) {
      const json& row = rows.at(static_cast<std::size_t>(r));
      const std::string rp = p + "/" + std::to_string(r);
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
        fail(rp, "expected " + std::to_string(dim) + " columns");
      for (Eigen::Index c = 0; c < dim; ++c) {
        const double x = number(row.at(static_cast<std::size_t>(c)), rp + "/" + std::to_string(c));
        if (imag)
          out(r, c) += cplx(0.0, x);
        else
          out(r, c) = cplx(x, 0.0);
      }
    }
  };
  read(re, path + "/re", false);
  if (im) read(*im, path + "/im", true);
  return out;
}

void parse_model(const json& m, Scenario& sc) {
  const std::string p = "/model";
  const json& kind = require(m, p, "kind");
  if (!kind.is_string()) fail(p + "/kind", "expected a string");
  sc.kind = kind.get<std::string>();
  sc.hbar = positive(number_or(m, p, "hbar", 1.0), p + "/hbar");
  sc.omega = positive(number_or(m, p, "omega", 1.0), p + "/omega");

  if (sc.kind == "toy") {
    reject_unknown(m, p, {"kind", "hbar", "omega", "e0"});
    sc.toy = {number_or(m, p, "e0", 1.0), sc.hbar, sc.omega};
  } else if (sc.kind == "spatial") {
    reject_unknown(m, p, {"kind", "hbar", "omega", "mass", "x_min", "x_max", "points", "potential", "level"});
    const double mass = positive(number_or(m, p, "mass", 1.0), p + "/mass");
    const double x_min = number(require(m, p, "x_min"), p + "/x_min");
    const double x_max = number(require(m, p, "x_max"), p + "/x_max");
    if (!(x_max > x_min)) fail(p + "/x_max", "must exceed x_min");
    const int points = integer(require(m, p, "points"), p + "/points");
    if (points < 16) fail(p + "/points", "need at least 16 grid points");
    sc.level = integer_or(m, p, "level", 0);
    if (sc.level < 0) fail(p + "/level", "must be non-negative");

    const std::string pp = p + "/potential";
    const json& pot = object_at(m, p, "potential");
    reject_unknown(pot, pp, {"kind", "v0", "k", "phase", "samples"});
    models::PotentialSpec spec;
    const json& pk = require(pot, pp, "kind");
    if (!pk.is_string()) fail(pp + "/kind", "expected a string");
    spec.kind = pk.get<std::string>();
    if (spec.kind != "zero" && spec.kind != "cosine" && spec.kind != "quartic" && spec.kind != "samples")
      fail(pp + "/kind", "expected zero, cosine, quartic or samples");
    spec.v0 = number_or(pot, pp, "v0", 0.0);
    spec.k = number_or(pot, pp, "k", 1.0);
    spec.phase = number_or(pot, pp, "phase", 0.0);
    if (spec.kind == "samples") {
      const json& s = require(pot, pp, "samples");
      if (!s.is_array() || static_cast<int>(s.size()) != points)
        fail(pp + "/samples", "expected an array of " + std::to_string(points) + " numbers");
      for (std::size_t i = 0; i < s.size(); ++i) spec.samples.push_back(number(s[i], pp + "/samples/" + std::to_string(i)));
    }
    try {
      sc.spatial = models::make_spatial_model(mass, sc.hbar, sc.omega, x_min, x_max, points, spec);
    } catch (const DomainError& e) {
      fail(p, e.what());
    }
  } else if (sc.kind == "custom-modes") {
    reject_unknown(m, p, {"kind", "hbar", "omega", "dim", "modes", "level"});
    const int dim = integer(require(m, p, "dim"), p + "/dim");
    if (dim < 1) fail(p + "/dim", "must be at least 1");
    sc.level = integer_or(m, p, "level", 0);
    if (sc.level < 0 || sc.level >= dim) fail(p + "/level", "must lie in [0, dim)");
    const json& modes = require(m, p, "modes");
    if (!modes.is_array() || modes.empty()) fail(p + "/modes", "expected a non-empty array");
    sc.custom.omega = sc.omega;
    sc.custom.dim = dim;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string mp = p + "/modes/" + std::to_string(i);
      const json& mode = modes[i];
      if (!mode.is_object()) fail(mp, "expected an object");
      reject_unknown(mode, mp, {"m", "re", "im"});
      const int idx = integer(require(mode, mp, "m"), mp + "/m");
      if (sc.custom.modes.count(idx)) fail(mp + "/m", "duplicate harmonic");
      sc.custom.modes[idx] = matrix_from(require(mode, mp, "re"), mode.contains("im") ? &mode.at("im") : nullptr, dim, mp);
    }
    if (!sc.custom.modes.count(0)) sc.custom.modes[0] = CMatrix::Zero(dim, dim);
    if (sc.custom.hermiticity_defect() > 1e-12) fail(p + "/modes", "H(t) is not Hermitian: h(-m) must equal h(m)^dagger");
  } else {
    fail(p + "/kind", "expected toy, spatial or custom-modes, got \"" + sc.kind + "\"");
  }
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tol = {
      {"eigen_residual", 1e-8},
      {"ftse_residual", 1e-2},
      {"alpha_one_reduction", 1e-9},
      {"direct_oracle", 1e-3},
  };
  return tol;
}

double Scenario::tolerance(const std::string& check) const {
  const auto it = tolerances.find(check);
  return it != tolerances.end() ? it->second : default_tolerances().at(check);
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) fail("", "top level must be an object");
  reject_unknown(j, "", {"schema_version", "name", "model", "alpha", "truncation", "grid", "oracle", "kernel",
                         "tolerances", "output"});
  const int schema = integer(require(j, "", "schema_version"), "/schema_version");
  if (schema != kSchemaVersion)
    fail("/schema_version", "unsupported version " + std::to_string(schema) + " (expected " +
                                std::to_string(kSchemaVersion) + ")");

  Scenario sc;
  sc.echo = j;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("/name", "expected a string");
    sc.name = j["name"].get<std::string>();
  }
  parse_model(object_at(j, "", "model"), sc);

  sc.alpha = number(require(j, "", "alpha"), "/alpha");
  if (!(sc.alpha > 0.0 && sc.alpha <= 1.0)) fail("/alpha", "must lie in (0, 1]");

  const json& tr = require(j, "", "truncation");
  if (tr.is_array()) {
    if (tr.empty()) fail("/truncation", "expected at least one value");
    for (std::size_t i = 0; i < tr.size(); ++i) sc.truncations.push_back(integer(tr[i], "/truncation/" + std::to_string(i)));
  } else {
    sc.truncations.push_back(integer(tr, "/truncation"));
  }
  for (std::size_t i = 0; i < sc.truncations.size(); ++i) {
    const int N = sc.truncations[i];
    const std::string p = tr.is_array() ? "/truncation/" + std::to_string(i) : "/truncation";
    if (N < 2) fail(p, "must be at least 2");
    if (sc.kind == "toy" && N < 2.0 * std::abs(sc.toy.drive())) fail(p, "toy model needs N >= 2 e0 / (hbar omega)");
    if (sc.kind == "custom-modes" && N < sc.custom.max_mode()) fail(p, "must be at least the highest drive harmonic");
  }

  if (j.contains("grid")) {
    const json& g = object_at(j, "", "grid");
    reject_unknown(g, "/grid", {"steps_per_period", "periods"});
    sc.grid.steps_per_period = integer_or(g, "/grid", "steps_per_period", sc.grid.steps_per_period);
    sc.grid.periods = number_or(g, "/grid", "periods", sc.grid.periods);
  }
  if (sc.grid.steps_per_period < 16) fail("/grid/steps_per_period", "must be at least 16");
  positive(sc.grid.periods, "/grid/periods");
  if (sc.grid.periods * sc.grid.steps_per_period > 1e6) fail("/grid", "more than 1e6 time steps requested");

  if (j.contains("oracle")) {
    const json& o = object_at(j, "", "oracle");
    reject_unknown(o, "/oracle", {"direct"});
    if (o.contains("direct")) {
      if (!o["direct"].is_boolean()) fail("/oracle/direct", "expected true or false");
      sc.direct_oracle = o["direct"].get<bool>();
    }
  }

  if (j.contains("kernel")) {
    const json& k = object_at(j, "", "kernel");
    reject_unknown(k, "/kernel", {"t", "xi_max", "points"});
    KernelSpec ks;
    ks.t = positive(number_or(k, "/kernel", "t", ks.t), "/kernel/t");
    ks.xi_max = positive(number_or(k, "/kernel", "xi_max", ks.xi_max), "/kernel/xi_max");
    const int pts = integer_or(k, "/kernel", "points", static_cast<int>(ks.points));
    if (pts < 3) fail("/kernel/points", "must be at least 3");
    ks.points = static_cast<std::size_t>(pts);
    if (sc.alpha == 1.0) fail("/kernel", "the subordination kernel needs alpha < 1");
    sc.kernel = ks;
  }

  if (j.contains("tolerances")) {
    const json& t = object_at(j, "", "tolerances");
    for (const auto& [key, value] : t.items()) {
      if (!default_tolerances().count(key)) fail("/tolerances/" + key, "unknown check name");
      sc.tolerances[key] = positive(number(value, "/tolerances/" + key), "/tolerances/" + key);
    }
  }

  if (j.contains("output")) {
    const json& o = object_at(j, "", "output");
    reject_unknown(o, "/output", {"dir"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) fail("/output/dir", "expected a string");
      sc.output_dir = o["dir"].get<std::string>();
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // translate the byte offset into a line and column
    const std::size_t upto = std::min(e.byte, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": syntax error");
  }
  return parse_scenario(j);
}

}  // namespace ffq::cli
