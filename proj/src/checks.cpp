#include "qgbound/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qgbound/estimation.hpp"
#include "qgbound/geometry.hpp"
#include "qgbound/qcrb.hpp"
#include "qgbound/random.hpp"
#include "qgbound/uncertainty.hpp"

namespace qgbound {

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

RealVec random_k(Rng& rng, int nparams) {
  RealVec k(nparams);
  for (int i = 0; i < nparams; ++i) k(i) = -M_PI + 2.0 * M_PI * rng.uniform();
  return k;
}

double tensor_distance(const GeometricTensor& a, const GeometricTensor& b) {
  return std::max((a.g - b.g).cwiseAbs().maxCoeff(),
                  (a.omega - b.omega).cwiseAbs().maxCoeff());
}

}  // namespace

std::vector<CheckResult> check_geometry(const ScenarioConfig& cfg) {
  std::vector<CheckResult> out;
  const SweepScenario sc = build_scenario(cfg);
  Rng rng(cfg.seed);

  double worst = 0.0;
  int evaluated = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const RealVec k = random_k(rng, sc.model.nparams);
    try {
      const GeometricTensor a = qgt_perturbative(sc.model, k, sc.n_occ);
      const GeometricTensor b = qgt_fd(sc.model, k, sc.n_occ, 1e-5);
      worst = std::max(worst, tensor_distance(a, b));
      ++evaluated;
    } catch (const GapClosing&) {
      // isolated band touchings are skipped, not failures
    }
  }
  out.push_back({"geometry/perturbative-vs-fd",
                 evaluated > 0 && worst <= 1e-6,
                 "max deviation " + fmt(worst) + " over " +
                     std::to_string(evaluated) + " k-points"});

  const bool pristine = cfg.field.Bx == 0.0 && cfg.field.By == 0.0 &&
                        cfg.field.Bz == 0.0;
  if (pristine && cfg.model == "ti3d") {
    const KPath path = path_from_letters(cfg.path, 20);
    double max_omega = 0.0;
    for (const PathSample& s : path.samples) {
      const GeometricTensor gt = qgt_perturbative(sc.model, s.k, sc.n_occ);
      max_omega = std::max(max_omega, gt.omega.cwiseAbs().maxCoeff());
    }
    out.push_back({"geometry/pristine-curvature", max_omega <= 1e-10,
                   "max |omega| " + fmt(max_omega)});
  }
  return out;
}

std::vector<CheckResult> check_qcrb(const ScenarioConfig& cfg) {
  std::vector<CheckResult> out;
  const SweepScenario sc = build_scenario(cfg);
  const KPath path = path_from_letters(cfg.path, cfg.points);
  const std::vector<ResultRow> rows = run_sweep(sc, path);

  double min_vg = 0.0, scale = 0.0;
  int flagged = 0;
  for (const ResultRow& row : rows) {
    if (row.flags.find("gap") != std::string::npos) {
      ++flagged;
      continue;
    }
    for (double v : {row.vg_xx, row.vg_yy, row.vg_zz}) {
      if (std::isnan(v)) continue;
      min_vg = std::min(min_vg, v);
      scale = std::max(scale, std::abs(v));
    }
  }
  const double tol = cfg.tol_scale * std::max(1e-9 * scale, 1e-14);
  out.push_back({"qcrb/metric-self-bound", min_vg >= -tol,
                 "min V^g " + fmt(min_vg) + " over " +
                     std::to_string(rows.size()) + " points (" +
                     std::to_string(flagged) + " gap-flagged)"});

  // Index-explicit 3D route must agree with the adjugate route.
  bool consistent = true;
  double worst = 0.0;
  if (sc.model.nparams == 3) {
    for (std::size_t i = 0; i < rows.size(); i += 7) {
      const PathSample& s = path.samples[i];
      GeometricTensor gt;
      try {
        gt = qgt_perturbative(sc.model, s.k, sc.n_occ);
      } catch (const GapClosing&) {
        continue;
      }
      const MetricSelfBound msb = metric_self_bound(gt, cfg.tol_scale);
      const auto explicit_reports = bound_3d_explicit(gt, cfg.tol_scale);
      for (int alpha = 0; alpha < 3; ++alpha) {
        const double a = msb.diagonal[alpha].residual;
        const double b = msb.degenerate
                             ? explicit_reports[alpha].residual
                             : explicit_reports[alpha].residual * 4.0 *
                                   msb.det_g;
        const double scale =
            std::max({std::abs(a), std::abs(b),
                      bound_scale_floor(gt.g, gt.g(alpha, alpha))});
        worst = std::max(worst, std::abs(a - b) / scale);
        if (std::abs(a - b) > 1e-9 * scale) consistent = false;
      }
    }
    out.push_back({"qcrb/3d-explicit-consistency", consistent,
                   "worst relative deviation " + fmt(worst)});
  }

  bool robertson_ok = true;
  double min_rd = 0.0;
  for (std::size_t i = 0; i < rows.size(); i += 7) {
    GeometricTensor gt;
    try {
      gt = qgt_perturbative(sc.model, path.samples[i].k, sc.n_occ);
    } catch (const GapClosing&) {
      continue;
    }
    const BoundReport r = robertson_det(gt, cfg.tol_scale);
    min_rd = std::min(min_rd, r.residual);
    if (!r.satisfied) robertson_ok = false;
  }
  out.push_back({"qcrb/robertson-det", robertson_ok,
                 "min residual " + fmt(min_rd)});
  return out;
}

std::vector<CheckResult> check_uncertainty(const ScenarioConfig& cfg) {
  std::vector<CheckResult> out;
  const SweepScenario sc = build_scenario(cfg);
  const KPath path = path_from_letters(cfg.path, cfg.points);
  const std::vector<ResultRow> rows = run_sweep(sc, path);

  double min_vl = 0.0, scale = 0.0, worst_spread = 0.0;
  for (const ResultRow& row : rows) {
    if (std::isnan(row.vl_xx)) continue;
    min_vl = std::min({min_vl, row.vl_xx, row.vl_yy, row.vl_zz});
    scale = std::max({scale, std::abs(row.vl_xx), std::abs(row.vl_yy),
                      std::abs(row.vl_zz)});
  }
  bool pairs_ok = true;
  for (const ResultRow& row : rows) {
    if (std::isnan(row.vl_xx)) continue;
    const double hi = std::max({row.vl_xx, row.vl_yy, row.vl_zz});
    const double lo = std::min({row.vl_xx, row.vl_yy, row.vl_zz});
    worst_spread = std::max(worst_spread, hi - lo);
    if (hi - lo > 1e-9 * std::abs(hi) + 1e-13) pairs_ok = false;
  }
  const double tol = cfg.tol_scale * std::max(1e-9 * scale, 1e-14);
  out.push_back({"uncertainty/spin-bound", min_vl >= -tol,
                 "min V^L " + fmt(min_vl)});
  out.push_back({"uncertainty/component-symmetry", pairs_ok,
                 "worst absolute spread " + fmt(worst_spread)});

  Rng rng(cfg.seed + 1);
  bool rs_ok = true;
  double min_rs = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Vec psi = rng.unit_vector(4);
    const Mat a = rng.hermitian(4);
    const Mat b = rng.hermitian(4);
    const BoundReport r = robertson_schrodinger(psi, a, b, cfg.tol_scale);
    min_rs = std::min(min_rs, r.residual);
    if (!r.satisfied) rs_ok = false;
  }
  out.push_back({"uncertainty/robertson-schrodinger", rs_ok,
                 "min residual " + fmt(min_rs) + " over 2000 random draws"});
  return out;
}

std::vector<CheckResult> check_counterexamples(std::uint64_t seed) {
  std::vector<CheckResult> out;

  double worst_det = 0.0, worst_mean = 0.0, worst_var = 0.0;
  for (int two_ell = 1; two_ell <= 8; ++two_ell) {
    const double ell = 0.5 * two_ell;
    const OperatorSet ops = angular_momentum_ops(ell);
    const int dim = two_ell + 1;
    for (int i = 0; i < dim; ++i) {
      const double m = ell - i;
      Vec psi = Vec::Zero(dim);
      psi(i) = 1.0;
      const CovCommPair cc = cov_comm(psi, ops);
      const double scale =
          std::max(std::pow(cc.cov.trace() / 3.0, 3), 1e-30);
      worst_det = std::max(worst_det,
                           std::abs(sym_det_adj_inv(cc.cov).det) / scale);
      worst_mean = std::max(worst_mean, std::abs(cc.means(2) - m));
      worst_var = std::max(
          worst_var, std::abs(cc.cov(0, 0) -
                              0.5 * (ell * ell + ell - m * m)));
    }
  }
  out.push_back({"counterexamples/angular-momentum",
                 worst_det <= 1e-12 && worst_mean <= 1e-12 &&
                     worst_var <= 1e-12,
                 "relative |det C| <= " + fmt(worst_det) +
                     ", moment errors <= " +
                     fmt(std::max(worst_mean, worst_var))});

  Rng rng(seed + 2);
  double worst_pauli = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector3d d;
    do {
      d = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
    } while (d.norm() < 0.2);
    const auto& s = pauli_matrices();
    const Mat h = d(0) * s[0] + d(1) * s[1] + d(2) * s[2];
    const Vec psi = eigh(h).vectors.col(0);
    const CovCommPair cc = cov_comm(psi, spin_operators(1));
    const double scale = std::max(std::pow(cc.cov.trace() / 3.0, 3), 1e-30);
    worst_pauli = std::max(worst_pauli,
                           std::abs(sym_det_adj_inv(cc.cov).det) / scale);
  }
  out.push_back({"counterexamples/pauli-lower-band", worst_pauli <= 1e-12,
                 "relative |det C| <= " + fmt(worst_pauli) +
                     " over 20 random d-vectors"});
  return out;
}

std::vector<CheckResult> check_estimation_demo(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(seed + 3);

  double min_eig = 0.0, worst_equality = 0.0, worst_f4g = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 3 + trial % 2;
    const Mat g1 = rng.hermitian(dim);
    const Mat g2 = rng.hermitian(dim);
    const Mat rho0 = rng.density(dim);
    DensityFamily fam;
    fam.dim = dim;
    fam.nparams = 2;
    fam.rho = [g1, g2, rho0](const RealVec& k) {
      // U(k) = exp(-i(k1 G1 + k2 G2)) through the spectral decomposition.
      const EigenSystem es = eigh(k(0) * g1 + k(1) * g2);
      Mat u = Mat::Zero(es.vectors.rows(), es.vectors.cols());
      for (Eigen::Index j = 0; j < es.values.size(); ++j)
        u += std::exp(Complex(0, -es.values(j))) * es.vectors.col(j) *
             es.vectors.col(j).adjoint();
      return Mat(u * rho0 * u.adjoint());
    };
    RealVec k0(2);
    k0 << 0.3 * rng.normal(), 0.3 * rng.normal();
    const Mat rho = fam.rho(k0);
    const auto drho = fam.derivatives(k0);

    OperatorSet ops;
    ops.ops = {rng.hermitian(dim), rng.hermitian(dim)};
    ops.labels = {"O1", "O2"};
    const MixedQcrbResidual res = mixed_qcrb_residual(rho, drho, ops);
    if (!res.degenerate) {
      const double scale = std::max(res.residual.cwiseAbs().maxCoeff(), 1.0);
      min_eig = std::min(min_eig, res.min_eig / scale);
    }

    const SLDSet l = sld(rho, drho);
    const RealMat f = qfim(rho, l);
    OperatorSet sops;
    sops.ops = l.ls;
    sops.labels = {"L1", "L2"};
    const MixedQcrbResidual eq = mixed_qcrb_residual(rho, drho, sops);
    if (!eq.degenerate) {
      const double fscale = std::max(f.cwiseAbs().maxCoeff(), 1e-30);
      worst_equality = std::max(
          worst_equality, eq.residual.cwiseAbs().maxCoeff() / fscale);
    }
  }
  out.push_back({"estimation/mixed-qcrb-psd", min_eig >= -1e-9,
                 "min scaled eigenvalue " + fmt(min_eig)});
  out.push_back({"estimation/sld-equality", worst_equality <= 1e-9,
                 "worst scaled residual " + fmt(worst_equality)});

  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector3d base, amp1, amp2;
    for (int i = 0; i < 3; ++i) {
      base(i) = rng.normal();
      amp1(i) = rng.normal();
      amp2(i) = rng.normal();
    }
    if (base.norm() < 0.3) base += Eigen::Vector3d(0.5, 0.5, 0.5);
    DField d = [base, amp1, amp2](const RealVec& k) {
      return Eigen::Vector3d(base + std::sin(k(0)) * amp1 +
                             std::sin(k(1)) * amp2);
    };
    DFieldGrad grad = [amp1, amp2](const RealVec& k) {
      Eigen::Matrix<double, 3, Eigen::Dynamic> j(3, 2);
      j.col(0) = std::cos(k(0)) * amp1;
      j.col(1) = std::cos(k(1)) * amp2;
      return j;
    };
    const BlochModel model = two_band_model(2, d, grad);
    RealVec k0(2);
    k0 << 0.4 * rng.normal(), 0.4 * rng.normal();
    if (d(k0).norm() < 0.3) continue;

    const DensityFamily fam = band_density_family(model, 1);
    const SLDSet l = sld(fam.rho(k0), fam.derivatives(k0));
    const RealMat f = qfim(fam.rho(k0), l);
    const GeometricTensor gt = qgt_perturbative(model, k0, 1);
    worst_f4g = std::max(worst_f4g,
                         (f - 4.0 * gt.g).cwiseAbs().maxCoeff());
  }
  out.push_back({"estimation/pure-state-reduction", worst_f4g <= 1e-10,
                 "max |F - 4g| " + fmt(worst_f4g)});
  return out;
}

std::vector<CheckResult> run_checks(const ScenarioConfig& cfg) {
  validate_config(cfg);
  std::vector<std::string> names =
      cfg.scenarios.empty() ? kAllScenarios : cfg.scenarios;

  std::vector<CheckResult> out;
  for (const std::string& name : names) {
    std::vector<CheckResult> part;
    if (name == "geometry") part = check_geometry(cfg);
    else if (name == "qcrb") part = check_qcrb(cfg);
    else if (name == "uncertainty") part = check_uncertainty(cfg);
    else if (name == "counterexamples") part = check_counterexamples(cfg.seed);
    else if (name == "estimation-demo") part = check_estimation_demo(cfg.seed);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace qgbound
