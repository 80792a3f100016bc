#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qgbound/sweep.hpp"

namespace qgbound {

inline constexpr const char* kCsvHeader =
    "index,segment,arclength,kx,ky,kz,g_xx,g_xy,g_xz,g_yy,g_yz,g_zz,"
    "om_xy,om_yz,om_zx,det_g,Vg_xx,Vg_yy,Vg_zz,VL_xx,VL_yy,VL_zz,"
    "sx,sy,sz,det_C,flags";

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void emit_json(const std::vector<ResultRow>& rows, std::ostream& out);

/// Inverse of emit_csv. NaN fields are written empty and parse back to NaN.
std::vector<ResultRow> parse_csv(std::istream& in);

}  // namespace qgbound
