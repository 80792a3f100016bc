#include "qgbound/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace qgbound {

const std::vector<std::string> kAllScenarios = {
    "geometry", "qcrb", "uncertainty", "estimation-demo", "counterexamples"};

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.is_number())
    throw ConfigError("config: key '" + key + "' must be a number");
  return j.get<double>();
}

BlochModel two_band_lattice(double mass) {
  // 3D Wilson-type Dirac lattice: d = (sin kx, sin ky, m - sum cos k_i).
  DField d = [mass](const RealVec& k) {
    return Eigen::Vector3d(std::sin(k(0)), std::sin(k(1)),
                           mass - std::cos(k(0)) - std::cos(k(1)) -
                               std::cos(k(2)));
  };
  DFieldGrad grad = [](const RealVec& k) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> j(3, 3);
    j.setZero();
    j(0, 0) = std::cos(k(0));
    j(1, 1) = std::cos(k(1));
    for (int mu = 0; mu < 3; ++mu) j(2, mu) = std::sin(k(mu));
    return j;
  };
  return two_band_model(3, d, grad);
}

BlochModel two_band_lattice_plane(double mass, double kz) {
  DField d = [mass, kz](const RealVec& k) {
    return Eigen::Vector3d(std::sin(k(0)), std::sin(k(1)),
                           mass - std::cos(k(0)) - std::cos(k(1)) -
                               std::cos(kz));
  };
  DFieldGrad grad = [](const RealVec& k) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> j(3, 2);
    j.setZero();
    j(0, 0) = std::cos(k(0));
    j(1, 1) = std::cos(k(1));
    j(2, 0) = std::sin(k(0));
    j(2, 1) = std::sin(k(1));
    return j;
  };
  return two_band_model(2, d, grad);
}

}  // namespace

ScenarioConfig parse_config_json(const std::string& text, ScenarioConfig base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: document must be an object");

  static const std::set<std::string> known = {
      "model", "params", "field", "path",   "points", "grid",
      "scenarios", "format", "out", "seed", "tol_scale"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key))
      throw ConfigError("config: unknown key '" + key + "'");

  ScenarioConfig cfg = std::move(base);
  if (doc.contains("model")) {
    if (!doc["model"].is_string())
      throw ConfigError("config: key 'model' must be a string");
    cfg.model = doc["model"].get<std::string>();
  }
  if (doc.contains("params")) {
    const json& p = doc["params"];
    if (!p.is_object()) throw ConfigError("config: key 'params' must be an object");
    for (const auto& [key, value] : p.items()) {
      if (key == "M") cfg.ti.M = require_number(value, "params.M");
      else if (key == "A") cfg.ti.A = require_number(value, "params.A");
      else if (key == "B") cfg.ti.B = require_number(value, "params.B");
      else if (key == "m") cfg.two_band_mass = require_number(value, "params.m");
      else throw ConfigError("config: unknown key 'params." + key + "'");
    }
  }
  if (doc.contains("field")) {
    const json& f = doc["field"];
    if (!f.is_array() || f.size() != 3)
      throw ConfigError("config: key 'field' must be an array of 3 numbers");
    cfg.field.Bx = require_number(f[0], "field[0]");
    cfg.field.By = require_number(f[1], "field[1]");
    cfg.field.Bz = require_number(f[2], "field[2]");
  }
  if (doc.contains("path")) {
    if (!doc["path"].is_string())
      throw ConfigError("config: key 'path' must be a string");
    cfg.path = doc["path"].get<std::string>();
  }
  if (doc.contains("points")) {
    if (!doc["points"].is_number_integer())
      throw ConfigError("config: key 'points' must be an integer");
    cfg.points = doc["points"].get<int>();
  }
  if (doc.contains("grid")) {
    if (!doc["grid"].is_number_integer())
      throw ConfigError("config: key 'grid' must be an integer");
    cfg.grid = doc["grid"].get<int>();
  }
  if (doc.contains("scenarios")) {
    if (!doc["scenarios"].is_array())
      throw ConfigError("config: key 'scenarios' must be an array");
    cfg.scenarios.clear();
    for (const auto& s : doc["scenarios"]) {
      if (!s.is_string())
        throw ConfigError("config: entries of 'scenarios' must be strings");
      cfg.scenarios.push_back(s.get<std::string>());
    }
  }
  if (doc.contains("format")) {
    if (!doc["format"].is_string())
      throw ConfigError("config: key 'format' must be a string");
    cfg.format = doc["format"].get<std::string>();
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string())
      throw ConfigError("config: key 'out' must be a string");
    cfg.out = doc["out"].get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
      throw ConfigError("config: key 'seed' must be an integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("tol_scale"))
    cfg.tol_scale = require_number(doc["tol_scale"], "tol_scale");
  return cfg;
}

void apply_param_overrides(ScenarioConfig& cfg,
                           const std::vector<std::string>& kv) {
  for (const std::string& item : kv) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: parameter override '" + item +
                        "' is not of the form key=value");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    double parsed = 0.0;
    try {
      std::size_t used = 0;
      parsed = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw ConfigError("config: parameter '" + key +
                        "' has a non-numeric value '" + val + "'");
    }
    if (key == "M") cfg.ti.M = parsed;
    else if (key == "A") cfg.ti.A = parsed;
    else if (key == "B") cfg.ti.B = parsed;
    else if (key == "m") cfg.two_band_mass = parsed;
    else throw ConfigError("config: unknown parameter key '" + key + "'");
  }
}

FieldVector parse_field(const std::string& text) {
  std::vector<double> vals;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(',', start);
    const std::string cell = pos == std::string::npos
                                 ? text.substr(start)
                                 : text.substr(start, pos - start);
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ConfigError("config: field component '" + cell +
                        "' is not a number");
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (vals.size() != 3)
    throw ConfigError("config: field must have exactly 3 components");
  return FieldVector{vals[0], vals[1], vals[2]};
}

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.model != "ti3d" && cfg.model != "two-band")
    throw ConfigError("config: unknown model '" + cfg.model + "'");
  if (cfg.points < 2)
    throw ConfigError("config: 'points' must be at least 2");
  if (cfg.grid && *cfg.grid < 2)
    throw ConfigError("config: 'grid' must be at least 2");
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("config: unknown format '" + cfg.format + "'");
  if (!(cfg.tol_scale > 0.0))
    throw ConfigError("config: 'tol_scale' must be positive");
  for (const std::string& s : cfg.scenarios)
    if (std::find(kAllScenarios.begin(), kAllScenarios.end(), s) ==
        kAllScenarios.end())
      throw ConfigError("config: unknown scenario '" + s + "'");
  for (char c : cfg.path)
    if (c != 'G' && c != 'X' && c != 'M' && c != 'R')
      throw ConfigError(std::string("config: unknown path vertex '") + c + "'");
  if (cfg.path.size() < 2)
    throw ConfigError("config: path needs at least two vertices");
}

SweepScenario build_scenario(const ScenarioConfig& cfg) {
  validate_config(cfg);
  SweepScenario sc;
  sc.tol_scale = cfg.tol_scale;
  if (cfg.model == "ti3d") {
    sc.model = ti_model(cfg.ti, cfg.field);
    sc.spin_ops = spin_operators(2);
    sc.n_occ = 2;
  } else {
    sc.model = two_band_lattice(cfg.two_band_mass);
    sc.spin_ops = spin_operators(1);
    sc.n_occ = 1;
  }
  return sc;
}

SweepScenario build_plane_scenario(const ScenarioConfig& cfg, double kz_plane) {
  validate_config(cfg);
  SweepScenario sc;
  sc.tol_scale = cfg.tol_scale;
  if (cfg.model == "ti3d") {
    sc.model = ti_model_kz_plane(cfg.ti, cfg.field, kz_plane);
    sc.spin_ops = spin_operators(2);
    sc.n_occ = 2;
  } else {
    sc.model = two_band_lattice_plane(cfg.two_band_mass, kz_plane);
    sc.spin_ops = spin_operators(1);
    sc.n_occ = 1;
  }
  return sc;
}

}  // namespace qgbound
