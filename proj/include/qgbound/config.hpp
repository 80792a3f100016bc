#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgbound/models.hpp"
#include "qgbound/sweep.hpp"

namespace qgbound {

/// CLI / config-file scenario description. Defaults follow the lattice
/// model parameters M = -0.3, A = 2.87, B = 0.3 and the G-X-M-R-G path
/// with 100 points per segment.
struct ScenarioConfig {
  std::string model = "ti3d";  // "ti3d" | "two-band"
  TIParams ti;
  double two_band_mass = 1.5;
  FieldVector field;
  std::string path = "GXMRG";
  int points = 100;
  std::optional<int> grid;  // n x n kz=0 grid instead of the path
  std::vector<std::string> scenarios;  // empty = all
  std::string format = "csv";  // "csv" | "json"
  std::string out = "-";
  std::uint64_t seed = 42;
  double tol_scale = 1.0;
};

extern const std::vector<std::string> kAllScenarios;

/// Parse a JSON config document. Unknown keys are rejected with a
/// ConfigError naming the offending key; parsing never crashes on
/// malformed input.
ScenarioConfig parse_config_json(const std::string& text,
                                 ScenarioConfig base = {});

/// Apply "key=value" model-parameter overrides (keys M, A, B, m).
void apply_param_overrides(ScenarioConfig& cfg,
                           const std::vector<std::string>& kv);

/// Parse "x,y,z" into a field vector.
FieldVector parse_field(const std::string& text);

void validate_config(const ScenarioConfig& cfg);

/// Model + spin set + occupation selected by the config.
SweepScenario build_scenario(const ScenarioConfig& cfg);
/// Same restricted to the kz = kz_plane plane (2-parameter space).
SweepScenario build_plane_scenario(const ScenarioConfig& cfg, double kz_plane);

}  // namespace qgbound
