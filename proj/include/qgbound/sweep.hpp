#pragma once

#include <string>
#include <vector>

#include "qgbound/common.hpp"
#include "qgbound/models.hpp"
#include "qgbound/states.hpp"

namespace qgbound {

struct PathSample {
  Eigen::Vector3d k;
  double arclength = 0.0;
  int segment = 0;
};

/// Piecewise-linear path through named high-symmetry points. Each segment
/// contains its start point and excludes its end; the final vertex is
/// appended once, so a path of S segments with n points per segment has
/// S*n + 1 samples.
struct KPath {
  std::vector<std::string> names;
  std::vector<Eigen::Vector3d> vertices;
  int points_per_segment = 0;
  std::vector<PathSample> samples;

  std::string segment_label(int segment) const;
};

/// The Gamma-X-M-R-Gamma path with Gamma=(0,0,0), X=(pi,0,0), M=(pi,pi,0),
/// R=(pi,pi,pi). Throws InvalidCount for n < 2.
KPath standard_path(int points_per_segment);

/// Path from a vertex-letter string over {G, X, M, R}, e.g. "GXMRG".
KPath path_from_letters(const std::string& letters, int points_per_segment);

/// One sweep output record. NaN numeric fields serialize as empty CSV
/// fields / JSON nulls; rows at gap closings carry the "gap" flag and all
/// numerics NaN.
struct ResultRow {
  int index = 0;
  std::string segment;
  double arclength = 0.0;
  double kx = 0.0, ky = 0.0, kz = 0.0;
  double g_xx = 0.0, g_xy = 0.0, g_xz = 0.0;
  double g_yy = 0.0, g_yz = 0.0, g_zz = 0.0;
  double om_xy = 0.0, om_yz = 0.0, om_zx = 0.0;
  double det_g = 0.0;
  double vg_xx = 0.0, vg_yy = 0.0, vg_zz = 0.0;
  double vl_xx = 0.0, vl_yy = 0.0, vl_zz = 0.0;
  double sx = 0.0, sy = 0.0, sz = 0.0;
  double det_c = 0.0;
  std::string flags;
};

struct SweepScenario {
  BlochModel model;
  OperatorSet spin_ops;
  int n_occ = 1;  // occupied bands entering the geometric tensor
  double tol_scale = 1.0;
};

/// Evaluates every path sample independently (parallel over points, capped
/// by QGBOUND_THREADS) and returns rows in index order; results do not
/// depend on the parallelism degree.
std::vector<ResultRow> run_sweep(const SweepScenario& scenario,
                                 const KPath& path);

/// n x n grid over (-pi, pi]^2 at fixed kz for a 2-parameter model
/// restriction; rows are emitted in row-major order with segment "grid".
std::vector<ResultRow> run_grid(const SweepScenario& scenario, int n,
                                double kz_plane);

}  // namespace qgbound
