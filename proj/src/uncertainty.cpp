#include "qgbound/uncertainty.hpp"

#include <cmath>

namespace qgbound {

namespace {

double bound_tol(double lhs, double rhs, double tol_scale,
                 double scale_floor) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), scale_floor});
  return tol_scale * std::max(1e-9 * scale, 1e-14);
}

}  // namespace

BoundReport robertson_schrodinger(const Vec& psi, const Mat& a, const Mat& b,
                                  double tol_scale) {
  if (a.rows() != psi.size() || b.rows() != psi.size() ||
      a.rows() != a.cols() || b.rows() != b.cols())
    throw DimMismatch("robertson_schrodinger: operator/state dimensions differ");

  const Vec apsi = a * psi;
  const Vec bpsi = b * psi;
  const double mean_a = psi.dot(apsi).real();
  const double mean_b = psi.dot(bpsi).real();
  const double var_a = apsi.squaredNorm() - mean_a * mean_a;
  const double var_b = bpsi.squaredNorm() - mean_b * mean_b;

  const Complex ab = apsi.dot(bpsi);  // <A B>
  const double anti = 2.0 * (ab.real() - mean_a * mean_b);  // <{dA, dB}>
  const double comm = 2.0 * ab.imag();                      // -i <[A, B]>

  const double lhs = var_a * var_b;
  const double rhs = 0.25 * anti * anti + 0.25 * comm * comm;
  const double floor =
      1e-4 * std::pow(std::abs(var_a) + std::abs(var_b) +
                          std::abs(mean_a) + std::abs(mean_b),
                      2);
  return make_bound_report("robertson_schrodinger", lhs, rhs, false, tol_scale,
                           floor);
}

UncertaintyReport multi_op_bound(const Vec& psi, const OperatorSet& s,
                                 double tol_scale) {
  const int n = s.size();
  if (n < 2) throw WrongArity("multi_op_bound: need at least two operators");

  const CovCommPair cc = cov_comm(psi, s);
  const DetAdjInv dai = sym_det_adj_inv(cc.cov);

  UncertaintyReport out;
  out.labels = s.labels;
  if (out.labels.empty())
    for (int a = 0; a < n; ++a) out.labels.push_back("op" + std::to_string(a));
  out.det_cov = dai.det;
  out.degenerate = dai.degenerate;
  out.satisfied = true;

  for (int alpha = 0; alpha < n; ++alpha) {
    const RealVec row = cc.comm.row(alpha);
    const double q = row.dot(dai.adj * row);
    const double lhs = 4.0 * dai.det * cc.cov(alpha, alpha);
    const double tol = bound_tol(
        lhs, q, tol_scale, bound_scale_floor(cc.cov, cc.cov(alpha, alpha)));
    out.variances.push_back(cc.cov(alpha, alpha));
    out.lhs.push_back(lhs);
    out.rhs.push_back(q);
    out.residuals.push_back(lhs - q);
    out.tols.push_back(tol);
    if (lhs - q < -tol) out.satisfied = false;
  }

  if (!dai.degenerate) {
    double sum_lhs = 0.0, sum_rhs = 0.0, prod_lhs = 1.0, prod_rhs = 1.0;
    for (int alpha = 0; alpha < n; ++alpha) {
      const double ratio_rhs = out.rhs[alpha] / (4.0 * dai.det);
      sum_lhs += out.variances[alpha];
      sum_rhs += ratio_rhs;
      prod_lhs *= out.variances[alpha];
      prod_rhs *= ratio_rhs;
    }
    out.sum_margin = sum_lhs - sum_rhs;
    out.product_margin = prod_lhs - prod_rhs;
  }
  return out;
}

UncertaintyReport three_op_explicit(const Vec& psi, const OperatorSet& s,
                                    double tol_scale) {
  if (s.size() != 3)
    throw WrongArity("three_op_explicit: needs exactly three operators");
  for (const Mat& op : s.ops)
    if (op.rows() != psi.size() || op.cols() != psi.size())
      throw DimMismatch("three_op_explicit: operator/state dimensions differ");

  // Raw expectation values; the commutator means stay complex (they are
  // purely imaginary) so the printed squares can be formed verbatim.
  Vec w[3];
  double mean[3];
  for (int a = 0; a < 3; ++a) {
    w[a] = s.ops[a] * psi;
    mean[a] = psi.dot(w[a]).real();
  }
  Complex gram[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) gram[a][b] = w[a].dot(w[b]);

  auto var = [&](int a) { return gram[a][a].real() - mean[a] * mean[a]; };
  auto anti = [&](int a, int b) {  // <{dL_a, dL_b}>
    return (gram[a][b] + gram[b][a]).real() - 2.0 * mean[a] * mean[b];
  };
  auto comm = [&](int a, int b) {  // <[L_a, L_b]>
    return gram[a][b] - gram[b][a];
  };

  const double vx = var(0), vy = var(1), vz = var(2);
  const double axy = anti(0, 1), ayz = anti(1, 2), azx = anti(2, 0);
  const Complex cxy = comm(0, 1), cyz = comm(1, 2), czx = comm(2, 0);

  const double det_cov = vx * vy * vz + 0.25 * axy * ayz * azx -
                         0.25 * ayz * ayz * vx - 0.25 * azx * azx * vy -
                         0.25 * axy * axy * vz;

  const Complex paren_x = -cxy * cxy * vz * vx +
                          0.25 * cxy * cxy * azx * azx +
                          0.5 * cxy * czx * axy * azx -
                          cxy * czx * ayz * vx - czx * czx * vx * vy +
                          0.25 * czx * czx * axy * axy;
  const Complex paren_y = -cyz * cyz * vx * vy +
                          0.25 * cyz * cyz * axy * axy +
                          0.5 * cyz * cxy * ayz * axy -
                          cyz * cxy * azx * vy - cxy * cxy * vy * vz +
                          0.25 * cxy * cxy * ayz * ayz;
  const Complex paren_z = -czx * czx * vy * vz +
                          0.25 * czx * czx * ayz * ayz +
                          0.5 * czx * cyz * azx * ayz -
                          czx * cyz * axy * vz - cyz * cyz * vz * vx +
                          0.25 * cyz * cyz * azx * azx;

  RealMat cov(3, 3);
  cov << vx, 0.5 * axy, 0.5 * azx,
         0.5 * axy, vy, 0.5 * ayz,
         0.5 * azx, 0.5 * ayz, vz;

  UncertaintyReport out;
  out.labels = s.labels;
  if (out.labels.empty())
    for (int a = 0; a < 3; ++a) out.labels.push_back("op" + std::to_string(a));
  out.det_cov = det_cov;
  out.degenerate = !(std::abs(det_cov) > det_threshold(cov));
  out.satisfied = true;
  out.variances = {vx, vy, vz};

  const double parens[3] = {paren_x.real(), paren_y.real(), paren_z.real()};
  for (int alpha = 0; alpha < 3; ++alpha) {
    const double lhs = 4.0 * det_cov * out.variances[alpha];
    const double rhs = parens[alpha];
    const double tol = bound_tol(
        lhs, rhs, tol_scale, bound_scale_floor(cov, out.variances[alpha]));
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.residuals.push_back(lhs - rhs);
    out.tols.push_back(tol);
    if (lhs - rhs < -tol) out.satisfied = false;
  }
  return out;
}

}  // namespace qgbound
