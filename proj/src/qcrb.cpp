#include "qgbound/qcrb.hpp"

#include <cmath>

namespace qgbound {

namespace {

const char* axis_name(int i) {
  static const char* names[3] = {"x", "y", "z"};
  return i < 3 ? names[i] : "?";
}

std::string diag_label(const std::string& prefix, int alpha, int dim) {
  if (dim <= 3)
    return prefix + "_" + axis_name(alpha) + axis_name(alpha);
  return prefix + "_" + std::to_string(alpha) + std::to_string(alpha);
}

}  // namespace

BoundReport make_bound_report(std::string name, double lhs, double rhs,
                              bool degenerate, double tol_scale,
                              double scale_floor) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = lhs - rhs;
  const double scale =
      std::max({std::abs(lhs), std::abs(rhs), std::abs(scale_floor)});
  r.tol = tol_scale * std::max(1e-9 * scale, 1e-14);
  r.degenerate = degenerate;
  r.satisfied = r.residual >= -r.tol;
  return r;
}

RealMat pure_state_drho_overlaps(const Vec& psi, const std::vector<Vec>& derivs,
                                 const OperatorSet& s) {
  const int nparams = static_cast<int>(derivs.size());
  const int nops = s.size();
  RealMat out(nparams, nops);
  for (int a = 0; a < nops; ++a) {
    if (s.ops[a].rows() != psi.size())
      throw DimMismatch("pure_state_drho_overlaps: operator dimension differs "
                        "from the state");
    const Vec opsi = s.ops[a] * psi;
    for (int mu = 0; mu < nparams; ++mu) {
      if (derivs[mu].size() != psi.size())
        throw DimMismatch("pure_state_drho_overlaps: derivative dimension "
                          "differs from the state");
      out(mu, a) = 2.0 * opsi.dot(derivs[mu]).real();
    }
  }
  return out;
}

QcrbResidual operator_qcrb_residual(const Vec& psi, const OperatorSet& s,
                                    const GeometricTensor& gt,
                                    const RealMat& drho_overlaps) {
  if (drho_overlaps.rows() != gt.g.rows() || drho_overlaps.cols() != s.size())
    throw DimMismatch("operator_qcrb_residual: dRho must be D x |S|");

  QcrbResidual out;
  const DetAdjInv dai = sym_det_adj_inv(gt.g);
  if (dai.degenerate) {
    out.degenerate = true;
    out.min_eig = std::nan("");
    return out;
  }
  const RealMat cov = cov_comm(psi, s).cov;
  out.residual =
      cov - 0.25 * drho_overlaps.transpose() * (*dai.inv) * drho_overlaps;
  out.residual = (0.5 * (out.residual + out.residual.transpose())).eval();
  out.min_eig = psd_residual(out.residual);
  return out;
}

MetricSelfBound metric_self_bound(const GeometricTensor& gt,
                                  double tol_scale) {
  const int dim = static_cast<int>(gt.g.rows());
  const DetAdjInv dai = sym_det_adj_inv(gt.g);

  MetricSelfBound out;
  out.det_g = dai.det;
  out.degenerate = dai.degenerate;

  for (int alpha = 0; alpha < dim; ++alpha) {
    const RealVec row = gt.omega.row(alpha);
    const double q = row.dot(dai.adj * row);
    BoundReport r = make_bound_report(
        diag_label("Vg", alpha, dim), 4.0 * dai.det * gt.g(alpha, alpha), q,
        dai.degenerate, tol_scale,
        bound_scale_floor(gt.g, gt.g(alpha, alpha)));
    out.diagonal.push_back(std::move(r));
  }

  const RealMat mat =
      4.0 * dai.det * gt.g + gt.omega * dai.adj * gt.omega;
  const double min_eig = psd_residual(mat);
  const double scale = std::max(mat.cwiseAbs().maxCoeff(), 1.0e-14);
  BoundReport m;
  m.name = "metric_self_bound_matrix";
  m.lhs = min_eig;
  m.rhs = 0.0;
  m.residual = min_eig;
  m.tol = tol_scale * std::max(1e-9 * scale, 1e-14);
  m.degenerate = dai.degenerate;
  m.satisfied = m.residual >= -m.tol;
  out.matrix_psd = std::move(m);
  return out;
}

std::vector<BoundReport> bound_3d_explicit(const GeometricTensor& gt,
                                           double tol_scale) {
  if (gt.g.rows() != 3)
    throw WrongDimension("bound_3d_explicit: needs a 3D parameter space");

  const double gxx = gt.g(0, 0), gxy = gt.g(0, 1), gxz = gt.g(0, 2);
  const double gyy = gt.g(1, 1), gyz = gt.g(1, 2), gzz = gt.g(2, 2);
  const double gzx = gxz;
  const double oxy = gt.omega(0, 1), oyz = gt.omega(1, 2),
               ozx = gt.omega(2, 0);

  const double denom = 4.0 * gxx * gyy * gzz + 8.0 * gxy * gyz * gzx -
                       4.0 * gxx * gyz * gyz - 4.0 * gyy * gzx * gzx -
                       4.0 * gzz * gxy * gxy;
  const double det = 0.25 * denom;
  const bool degenerate = !(std::abs(det) > det_threshold(gt.g));

  const double num_x = oxy * oxy * (gzz * gxx - gzx * gzx) +
                       ozx * ozx * (gxx * gyy - gxy * gxy) -
                       2.0 * oxy * ozx * (gxy * gzx - gxx * gyz);
  const double num_y = oyz * oyz * (gxx * gyy - gxy * gxy) +
                       oxy * oxy * (gyy * gzz - gyz * gyz) -
                       2.0 * oyz * oxy * (gyz * gxy - gyy * gzx);
  const double num_z = ozx * ozx * (gyy * gzz - gyz * gyz) +
                       oyz * oyz * (gzz * gxx - gzx * gzx) -
                       2.0 * ozx * oyz * (gzx * gyz - gzz * gxy);

  const double diag[3] = {gxx, gyy, gzz};
  const double nums[3] = {num_x, num_y, num_z};

  std::vector<BoundReport> out;
  for (int alpha = 0; alpha < 3; ++alpha) {
    const double floor = bound_scale_floor(gt.g, diag[alpha]);
    BoundReport r =
        degenerate
            ? make_bound_report(diag_label("g3d", alpha, 3),
                                denom * diag[alpha], nums[alpha], true,
                                tol_scale, floor)
            : make_bound_report(diag_label("g3d", alpha, 3), diag[alpha],
                                nums[alpha] / denom, false, tol_scale);
    out.push_back(std::move(r));
  }
  return out;
}

BoundReport robertson_det(const GeometricTensor& gt, double tol_scale) {
  const int dim = static_cast<int>(gt.g.rows());
  const DetAdjInv dai = sym_det_adj_inv(gt.g);
  double rhs = 0.0;
  if (dim % 2 == 0) rhs = RealMat(0.5 * gt.omega).determinant();
  const double trace_scale = std::abs(gt.g.trace()) / dim;
  return make_bound_report("robertson_det", dai.det, rhs, dai.degenerate,
                           tol_scale, bound_scale_floor(gt.g, trace_scale));
}

}  // namespace qgbound
