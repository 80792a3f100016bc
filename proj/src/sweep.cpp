#include "qgbound/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "qgbound/geometry.hpp"
#include "qgbound/qcrb.hpp"
#include "qgbound/uncertainty.hpp"

namespace qgbound {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int thread_budget(std::size_t njobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("QGBOUND_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0 && static_cast<unsigned>(cap) < n)
      n = static_cast<unsigned>(cap);
  }
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(njobs, 1)));
}

template <typename Fn>
void parallel_for(std::size_t njobs, Fn&& fn) {
  const int nthreads = thread_budget(njobs);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < njobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next.fetch_add(1); i < njobs;
             i = next.fetch_add(1))
          fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(njobs);  // stop handing out work
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void append_flag(std::string& flags, const char* flag) {
  if (!flags.empty()) flags += ';';
  flags += flag;
}

void blank_numerics(ResultRow& row) {
  row.g_xx = row.g_xy = row.g_xz = row.g_yy = row.g_yz = row.g_zz = kNan;
  row.om_xy = row.om_yz = row.om_zx = kNan;
  row.det_g = kNan;
  row.vg_xx = row.vg_yy = row.vg_zz = kNan;
  row.vl_xx = row.vl_yy = row.vl_zz = kNan;
  row.sx = row.sy = row.sz = kNan;
  row.det_c = kNan;
}

ResultRow compute_row(const SweepScenario& sc, const Eigen::Vector3d& k3,
                      const RealVec& kparam) {
  ResultRow row;
  row.kx = k3(0);
  row.ky = k3(1);
  row.kz = k3(2);

  const int nparams = sc.model.nparams;
  EigenSystem es;
  try {
    es = eigh(sc.model.hamiltonian(kparam));
    const GeometricTensor gt =
        qgt_perturbative(es, sc.model.gradient(kparam), kparam, sc.n_occ);
    const MetricSelfBound msb = metric_self_bound(gt, sc.tol_scale);

    row.g_xx = gt.g(0, 0);
    row.g_xy = gt.g(0, 1);
    row.g_yy = gt.g(1, 1);
    row.om_xy = gt.omega(0, 1);
    if (nparams >= 3) {
      row.g_xz = gt.g(0, 2);
      row.g_yz = gt.g(1, 2);
      row.g_zz = gt.g(2, 2);
      row.om_yz = gt.omega(1, 2);
      row.om_zx = gt.omega(2, 0);
    } else {
      row.g_xz = row.g_yz = row.g_zz = kNan;
      row.om_yz = row.om_zx = kNan;
    }
    row.det_g = msb.det_g;
    row.vg_xx = msb.diagonal[0].residual;
    row.vg_yy = msb.diagonal[1].residual;
    row.vg_zz = nparams >= 3 ? msb.diagonal[2].residual : kNan;
    if (msb.degenerate) append_flag(row.flags, "detg_zero");
  } catch (const GapClosing&) {
    blank_numerics(row);
    append_flag(row.flags, "gap");
    return row;
  }

  // Uncertainty relation for the spin set on the lowest eigenstate. The
  // state is well defined even when the lowest level is degenerate (the
  // eigensolver output is deterministic); such rows are flagged since the
  // spin means then depend on the returned basis.
  const int dim = static_cast<int>(es.values.size());
  const double range = std::max(es.values(dim - 1) - es.values(0), 1e-300);
  if (dim > 1 && es.values(1) - es.values(0) <= 1e-8 * range)
    append_flag(row.flags, "band1_deg");

  const Vec psi = es.vectors.col(0);
  const UncertaintyReport ur = multi_op_bound(psi, sc.spin_ops, sc.tol_scale);
  row.vl_xx = ur.residuals[0];
  row.vl_yy = ur.residuals[1];
  row.vl_zz = ur.residuals[2];
  row.det_c = ur.det_cov;
  row.sx = expectation(psi, sc.spin_ops.ops[0]);
  row.sy = expectation(psi, sc.spin_ops.ops[1]);
  row.sz = expectation(psi, sc.spin_ops.ops[2]);
  if (ur.degenerate) append_flag(row.flags, "detC_zero");
  return row;
}

}  // namespace

std::string KPath::segment_label(int segment) const {
  return names[segment] + "-" + names[segment + 1];
}

KPath path_from_letters(const std::string& letters, int points_per_segment) {
  if (points_per_segment < 2)
    throw InvalidCount("path: need at least 2 points per segment");
  if (letters.size() < 2)
    throw ConfigError("path: need at least two vertices");

  KPath path;
  path.points_per_segment = points_per_segment;
  for (char c : letters) {
    switch (c) {
      case 'G': path.vertices.emplace_back(0, 0, 0); break;
      case 'X': path.vertices.emplace_back(M_PI, 0, 0); break;
      case 'M': path.vertices.emplace_back(M_PI, M_PI, 0); break;
      case 'R': path.vertices.emplace_back(M_PI, M_PI, M_PI); break;
      default:
        throw ConfigError(std::string("path: unknown vertex letter '") + c +
                          "'");
    }
    path.names.emplace_back(1, c);
  }

  double arc = 0.0;
  const int nseg = static_cast<int>(path.vertices.size()) - 1;
  for (int s = 0; s < nseg; ++s) {
    const Eigen::Vector3d a = path.vertices[s];
    const Eigen::Vector3d b = path.vertices[s + 1];
    const double len = (b - a).norm();
    for (int i = 0; i < points_per_segment; ++i) {
      const double t = static_cast<double>(i) / points_per_segment;
      path.samples.push_back({a + t * (b - a), arc + t * len, s});
    }
    arc += len;
  }
  path.samples.push_back({path.vertices.back(), arc, nseg - 1});
  return path;
}

KPath standard_path(int points_per_segment) {
  return path_from_letters("GXMRG", points_per_segment);
}

std::vector<ResultRow> run_sweep(const SweepScenario& scenario,
                                 const KPath& path) {
  std::vector<ResultRow> rows(path.samples.size());
  parallel_for(path.samples.size(), [&](std::size_t i) {
    const PathSample& s = path.samples[i];
    RealVec kparam;
    if (scenario.model.nparams == 3) {
      kparam = s.k;
    } else {
      kparam.resize(2);
      kparam << s.k(0), s.k(1);
    }
    ResultRow row = compute_row(scenario, s.k, kparam);
    row.index = static_cast<int>(i);
    row.segment = path.segment_label(s.segment);
    row.arclength = s.arclength;
    rows[i] = std::move(row);
  });
  return rows;
}

std::vector<ResultRow> run_grid(const SweepScenario& scenario, int n,
                                double kz_plane) {
  if (n < 2) throw InvalidCount("run_grid: need n >= 2");
  if (scenario.model.nparams != 2)
    throw WrongDimension("run_grid: needs a 2-parameter model restriction");

  std::vector<ResultRow> rows(static_cast<std::size_t>(n) * n);
  parallel_for(rows.size(), [&](std::size_t i) {
    const int ix = static_cast<int>(i) % n;
    const int iy = static_cast<int>(i) / n;
    const double kx = -M_PI + 2.0 * M_PI * (ix + 1) / n;
    const double ky = -M_PI + 2.0 * M_PI * (iy + 1) / n;
    RealVec kparam(2);
    kparam << kx, ky;
    ResultRow row =
        compute_row(scenario, Eigen::Vector3d(kx, ky, kz_plane), kparam);
    row.index = static_cast<int>(i);
    row.segment = "grid";
    row.arclength = kNan;
    rows[i] = std::move(row);
  });
  return rows;
}

}  // namespace qgbound
