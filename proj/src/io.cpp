#include "qgbound/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qgbound {

namespace {

constexpr int kNumericFields = 24;  // columns between segment and flags

std::array<double ResultRow::*, kNumericFields> numeric_fields() {
  return {&ResultRow::arclength, &ResultRow::kx,    &ResultRow::ky,
          &ResultRow::kz,        &ResultRow::g_xx,  &ResultRow::g_xy,
          &ResultRow::g_xz,      &ResultRow::g_yy,  &ResultRow::g_yz,
          &ResultRow::g_zz,      &ResultRow::om_xy, &ResultRow::om_yz,
          &ResultRow::om_zx,     &ResultRow::det_g, &ResultRow::vg_xx,
          &ResultRow::vg_yy,     &ResultRow::vg_zz, &ResultRow::vl_xx,
          &ResultRow::vl_yy,     &ResultRow::vl_zz, &ResultRow::sx,
          &ResultRow::sy,        &ResultRow::sz,    &ResultRow::det_c};
}

std::vector<std::string> json_keys() {
  std::vector<std::string> keys;
  std::stringstream ss(kCsvHeader);
  std::string key;
  while (std::getline(ss, key, ',')) keys.push_back(key);
  return keys;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  const auto fields = numeric_fields();
  for (const ResultRow& row : rows) {
    out << row.index << ',' << row.segment;
    for (auto field : fields) {
      const double v = row.*field;
      out << ',';
      if (!std::isnan(v)) out << format_double(v);
    }
    out << ',' << row.flags << '\n';
  }
  if (!out) throw IoError("emit_csv: write failed");
}

void emit_json(const std::vector<ResultRow>& rows, std::ostream& out) {
  const auto keys = json_keys();
  const auto fields = numeric_fields();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ResultRow& row : rows) {
    nlohmann::ordered_json obj;
    obj[keys[0]] = row.index;
    obj[keys[1]] = row.segment;
    for (int f = 0; f < kNumericFields; ++f) {
      const double v = row.*fields[static_cast<std::size_t>(f)];
      if (std::isnan(v))
        obj[keys[2 + f]] = nullptr;
      else
        obj[keys[2 + f]] = v;
    }
    obj[keys.back()] = row.flags;
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
  if (!out) throw IoError("emit_json: write failed");
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("parse_csv: empty input");
  if (line == std::string(kCsvHeader) + "\r") line.pop_back();
  if (line != kCsvHeader) throw IoError("parse_csv: unexpected header row");

  const auto fields = numeric_fields();
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      if (pos == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (cells.size() != 2 + kNumericFields + 1)
      throw IoError("parse_csv: wrong field count in row");

    ResultRow row;
    auto icell = cells[0];
    auto ires = std::from_chars(icell.data(), icell.data() + icell.size(),
                                row.index);
    if (ires.ec != std::errc{}) throw IoError("parse_csv: bad index field");
    row.segment = cells[1];
    for (int f = 0; f < kNumericFields; ++f) {
      const std::string& cell = cells[2 + static_cast<std::size_t>(f)];
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!cell.empty()) {
        auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
          throw IoError("parse_csv: bad numeric field '" + cell + "'");
      }
      row.*fields[static_cast<std::size_t>(f)] = v;
    }
    row.flags = cells.back();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qgbound
