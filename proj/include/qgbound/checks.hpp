#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgbound/config.hpp"

namespace qgbound {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Bound-verification suites behind the `check` subcommand. Each returns
/// one result line per verified property; all randomness is seeded.
std::vector<CheckResult> check_geometry(const ScenarioConfig& cfg);
std::vector<CheckResult> check_qcrb(const ScenarioConfig& cfg);
std::vector<CheckResult> check_uncertainty(const ScenarioConfig& cfg);
std::vector<CheckResult> check_counterexamples(std::uint64_t seed);
std::vector<CheckResult> check_estimation_demo(std::uint64_t seed);

std::vector<CheckResult> run_checks(const ScenarioConfig& cfg);

}  // namespace qgbound
