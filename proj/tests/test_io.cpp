#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qgbound/config.hpp"
#include "qgbound/io.hpp"
#include "qgbound/random.hpp"

using namespace qgbound;

namespace {

bool rows_equal(const ResultRow& a, const ResultRow& b) {
  auto same = [](double x, double y) {
    if (std::isnan(x) && std::isnan(y)) return true;
    return x == y;
  };
  return a.index == b.index && a.segment == b.segment && a.flags == b.flags &&
         same(a.arclength, b.arclength) && same(a.kx, b.kx) &&
         same(a.ky, b.ky) && same(a.kz, b.kz) && same(a.g_xx, b.g_xx) &&
         same(a.g_xy, b.g_xy) && same(a.g_xz, b.g_xz) &&
         same(a.g_yy, b.g_yy) && same(a.g_yz, b.g_yz) &&
         same(a.g_zz, b.g_zz) && same(a.om_xy, b.om_xy) &&
         same(a.om_yz, b.om_yz) && same(a.om_zx, b.om_zx) &&
         same(a.det_g, b.det_g) && same(a.vg_xx, b.vg_xx) &&
         same(a.vg_yy, b.vg_yy) && same(a.vg_zz, b.vg_zz) &&
         same(a.vl_xx, b.vl_xx) && same(a.vl_yy, b.vl_yy) &&
         same(a.vl_zz, b.vl_zz) && same(a.sx, b.sx) && same(a.sy, b.sy) &&
         same(a.sz, b.sz) && same(a.det_c, b.det_c);
}

ResultRow random_row(Rng& rng, int index) {
  ResultRow row;
  row.index = index;
  row.segment = "G-X";
  row.arclength = rng.normal();
  row.kx = rng.normal() * 1e-7;
  row.ky = rng.normal() * 1e12;
  row.kz = rng.normal();
  row.g_xx = rng.normal();
  row.g_xy = rng.normal();
  row.g_xz = rng.normal();
  row.g_yy = rng.normal();
  row.g_yz = rng.normal();
  row.g_zz = rng.normal();
  row.om_xy = rng.normal();
  row.om_yz = rng.normal();
  row.om_zx = rng.normal();
  row.det_g = rng.normal();
  row.vg_xx = rng.normal();
  row.vg_yy = rng.normal();
  row.vg_zz = rng.normal();
  row.vl_xx = rng.normal();
  row.vl_yy = rng.normal();
  row.vl_zz = rng.normal();
  row.sx = rng.normal();
  row.sy = rng.normal();
  row.sz = rng.normal();
  row.det_c = rng.normal();
  return row;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  Rng rng(81);
  for (int trial = 0; trial < 2000; ++trial) {
    const double v = rng.normal() * std::pow(10.0, rng.integer(-12, 12));
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.5) == "1.5");
}

TEST_CASE("empty row set emits only the header / an empty array") {
  std::ostringstream csv;
  emit_csv({}, csv);
  CHECK(csv.str() == std::string(kCsvHeader) + "\n");

  std::ostringstream json;
  emit_json({}, json);
  CHECK(json.str() == "[]\n");
}

TEST_CASE("one row has exactly 27 comma-separated fields") {
  Rng rng(82);
  std::ostringstream out;
  emit_csv({random_row(rng, 0)}, out);
  std::istringstream in(out.str());
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  const long commas = std::count(line.begin(), line.end(), ',');
  CHECK(commas == 26);
}

TEST_CASE("CSV round-trips bit-exactly, including NaN fields") {
  Rng rng(83);
  std::vector<ResultRow> rows;
  for (int i = 0; i < 50; ++i) rows.push_back(random_row(rng, i));
  rows[7].g_zz = std::numeric_limits<double>::quiet_NaN();
  rows[7].flags = "gap";
  rows[13].det_c = std::numeric_limits<double>::quiet_NaN();
  rows[13].flags = "detC_zero;band1_deg";

  std::ostringstream out;
  emit_csv(rows, out);
  std::istringstream in(out.str());
  const std::vector<ResultRow> parsed = parse_csv(in);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    CHECK(rows_equal(rows[i], parsed[i]));

  // a second emit of the parsed rows is byte-identical
  std::ostringstream again;
  emit_csv(parsed, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("parse_csv rejects malformed input") {
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_csv(empty), IoError);
  std::istringstream wrong_header("a,b,c\n");
  CHECK_THROWS_AS(parse_csv(wrong_header), IoError);
  std::istringstream short_row(std::string(kCsvHeader) + "\n1,G-X,0.5\n");
  CHECK_THROWS_AS(parse_csv(short_row), IoError);
}

TEST_CASE("JSON emission uses the schema keys and nulls for NaN") {
  Rng rng(84);
  ResultRow row = random_row(rng, 3);
  row.vg_zz = std::numeric_limits<double>::quiet_NaN();
  std::ostringstream out;
  emit_json({row}, out);
  const std::string text = out.str();
  CHECK(text.find("\"Vg_zz\": null") != std::string::npos);
  CHECK(text.find("\"segment\": \"G-X\"") != std::string::npos);
  CHECK(text.find("\"det_C\"") != std::string::npos);
}

TEST_CASE("config parsing: defaults, overrides, unknown keys") {
  const ScenarioConfig defaults = parse_config_json("{}");
  CHECK(defaults.model == "ti3d");
  CHECK(defaults.ti.M == doctest::Approx(-0.3));
  CHECK(defaults.ti.A == doctest::Approx(2.87));
  CHECK(defaults.ti.B == doctest::Approx(0.3));
  CHECK(defaults.points == 100);
  CHECK(defaults.path == "GXMRG");
  CHECK(defaults.seed == 42);

  const ScenarioConfig cfg = parse_config_json(R"({
    "model": "two-band",
    "params": {"m": 2.5, "M": -0.2},
    "field": [0.1, 0.2, 0.3],
    "points": 17,
    "scenarios": ["geometry", "qcrb"],
    "format": "json",
    "seed": 7
  })");
  CHECK(cfg.model == "two-band");
  CHECK(cfg.two_band_mass == doctest::Approx(2.5));
  CHECK(cfg.ti.M == doctest::Approx(-0.2));
  CHECK(cfg.field.By == doctest::Approx(0.2));
  CHECK(cfg.points == 17);
  CHECK(cfg.scenarios.size() == 2);
  CHECK(cfg.format == "json");
  CHECK(cfg.seed == 7);

  CHECK_THROWS_WITH_AS(parse_config_json(R"({"modle": "ti3d"})"),
                       doctest::Contains("modle"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_json(R"({"params": {"Q": 1}})"),
                       doctest::Contains("Q"), ConfigError);
  CHECK_THROWS_AS(parse_config_json("not json at all"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"field": [1, 2]})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"points": "many"})"), ConfigError);
}

TEST_CASE("config parsing is total on fuzzed garbage") {
  Rng rng(85);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const int len = rng.integer(0, 40);
    for (int i = 0; i < len; ++i)
      text.push_back(static_cast<char>(32 + rng.integer(0, 94)));
    try {
      (void)parse_config_json(text);
    } catch (const ConfigError&) {
      // expected for malformed documents
    }
  }
}

TEST_CASE("flag-style overrides") {
  ScenarioConfig cfg;
  apply_param_overrides(cfg, {"M=-0.25", "A=3.0"});
  CHECK(cfg.ti.M == doctest::Approx(-0.25));
  CHECK(cfg.ti.A == doctest::Approx(3.0));
  CHECK_THROWS_AS(apply_param_overrides(cfg, {"bogus=1"}), ConfigError);
  CHECK_THROWS_AS(apply_param_overrides(cfg, {"M=abc"}), ConfigError);
  CHECK_THROWS_AS(apply_param_overrides(cfg, {"M"}), ConfigError);

  const FieldVector f = parse_field("0.5,1,2");
  CHECK(f.Bx == doctest::Approx(0.5));
  CHECK(f.By == doctest::Approx(1.0));
  CHECK(f.Bz == doctest::Approx(2.0));
  CHECK_THROWS_AS(parse_field("1,2"), ConfigError);
  CHECK_THROWS_AS(parse_field("a,b,c"), ConfigError);

  ScenarioConfig bad;
  bad.model = "nope";
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
}
