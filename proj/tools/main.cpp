#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qgbound/checks.hpp"
#include "qgbound/config.hpp"
#include "qgbound/io.hpp"

namespace {

constexpr const char* kVersion = "qgbound 0.1.0";

struct CliOptions {
  std::string config_file;
  std::string model;
  std::vector<std::string> params;
  std::string field;
  std::string path;
  int points = -1;
  int grid = -1;
  std::string scenarios;
  std::string format;
  std::string out;
  long long seed = -1;
  double tol_scale = -1.0;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_file, "JSON config file; flags override it");
  cmd->add_option("--model", opts.model, "Model id: ti3d | two-band");
  cmd->add_option("--params", opts.params, "Model parameter overrides, key=value (M, A, B, m)");
  cmd->add_option("--field", opts.field, "Zeeman field Bx,By,Bz in eV");
  cmd->add_option("--path", opts.path, "High-symmetry path letters over G,X,M,R");
  cmd->add_option("--points", opts.points, "Samples per path segment");
  cmd->add_option("--grid", opts.grid, "Use an n x n kz=0 grid instead of the path");
  cmd->add_option("--scenarios", opts.scenarios, "Comma list: geometry,qcrb,uncertainty,estimation-demo,counterexamples");
  cmd->add_option("--format", opts.format, "Output format: csv | json");
  cmd->add_option("--out", opts.out, "Output file, or - for stdout");
  cmd->add_option("--seed", opts.seed, "Seed for randomized scenarios");
  cmd->add_option("--tol-scale", opts.tol_scale, "Multiplier on all bound tolerances");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

qgbound::ScenarioConfig resolve_config(const CliOptions& opts) {
  qgbound::ScenarioConfig cfg;
  if (!opts.config_file.empty()) {
    std::ifstream in(opts.config_file);
    if (!in)
      throw qgbound::ConfigError("config: cannot open file '" +
                                 opts.config_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = qgbound::parse_config_json(buf.str(), cfg);
  }
  if (!opts.model.empty()) cfg.model = opts.model;
  if (!opts.params.empty()) qgbound::apply_param_overrides(cfg, opts.params);
  if (!opts.field.empty()) cfg.field = qgbound::parse_field(opts.field);
  if (!opts.path.empty()) cfg.path = opts.path;
  if (opts.points > 0) cfg.points = opts.points;
  if (opts.grid > 0) cfg.grid = opts.grid;
  if (!opts.scenarios.empty()) cfg.scenarios = split_list(opts.scenarios);
  if (!opts.format.empty()) cfg.format = opts.format;
  if (!opts.out.empty()) cfg.out = opts.out;
  if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.tol_scale > 0) cfg.tol_scale = opts.tol_scale;
  qgbound::validate_config(cfg);
  return cfg;
}

void write_rows(const qgbound::ScenarioConfig& cfg,
                const std::vector<qgbound::ResultRow>& rows) {
  std::ostringstream buf;
  if (cfg.format == "csv")
    qgbound::emit_csv(rows, buf);
  else
    qgbound::emit_json(rows, buf);

  if (cfg.out == "-") {
    std::cout << buf.str();
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw qgbound::IoError("cannot open output file '" + cfg.out + "'");
    out << buf.str();
    if (!out) throw qgbound::IoError("write to '" + cfg.out + "' failed");
  }
}

int run_sweep_command(const CliOptions& opts) {
  const auto cfg = resolve_config(opts);
  std::vector<qgbound::ResultRow> rows;
  if (cfg.grid) {
    rows = qgbound::run_grid(qgbound::build_plane_scenario(cfg, 0.0),
                             *cfg.grid, 0.0);
  } else {
    rows = qgbound::run_sweep(qgbound::build_scenario(cfg),
                              qgbound::path_from_letters(cfg.path, cfg.points));
  }
  write_rows(cfg, rows);
  return 0;
}

int run_check_command(const CliOptions& opts) {
  const auto cfg = resolve_config(opts);
  const auto results = qgbound::run_checks(cfg);
  bool all_ok = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": "
              << r.detail << '\n';
    all_ok = all_ok && r.pass;
  }
  std::cout << (all_ok ? "all bounds satisfied" : "bound violations found")
            << '\n';
  return all_ok ? 0 : 1;
}

int run_named_checks(const CliOptions& opts, const std::string& scenario) {
  CliOptions patched = opts;
  patched.scenarios = scenario;
  return run_check_command(patched);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-geometry bound verification for Bloch band models"};
  app.require_subcommand(1);

  CliOptions opts;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Evaluate the geometric tensor and bounds along a k-path");
  add_common_options(sweep, opts);
  CLI::App* check = app.add_subcommand(
      "check", "Run bound suites and exit 0 iff everything is satisfied");
  add_common_options(check, opts);
  CLI::App* counter = app.add_subcommand(
      "counterexamples", "Degenerate-covariance cases (angular momentum, Pauli)");
  add_common_options(counter, opts);
  CLI::App* demo = app.add_subcommand(
      "estimation-demo", "Mixed-state bound suite on seeded random families");
  add_common_options(demo, opts);
  CLI::App* version = app.add_subcommand("version", "Print version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (version->parsed()) {
      std::cout << kVersion << '\n';
      return 0;
    }
    if (sweep->parsed()) return run_sweep_command(opts);
    if (check->parsed()) return run_check_command(opts);
    if (counter->parsed()) return run_named_checks(opts, "counterexamples");
    if (demo->parsed()) return run_named_checks(opts, "estimation-demo");
  } catch (const qgbound::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qgbound::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
