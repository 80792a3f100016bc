#pragma once

#include <string>
#include <vector>

#include "qgbound/common.hpp"
#include "qgbound/geometry.hpp"
#include "qgbound/states.hpp"

namespace qgbound {

/// One evaluated inequality: residual = lhs - rhs, satisfied iff
/// residual >= -tol with
/// tol = tol_scale * max(1e-9 * max(|lhs|, |rhs|, scale_floor), 1e-14);
/// scale_floor carries the magnitude of cancelled polynomial terms.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tol = 0.0;
  bool degenerate = false;
  bool satisfied = false;
};

BoundReport make_bound_report(std::string name, double lhs, double rhs,
                              bool degenerate, double tol_scale = 1.0,
                              double scale_floor = 0.0);

/// Tr(d_mu rho O_a) = 2 Re <psi|O_a|d_mu psi> for a pure-state family;
/// rows index the parameter, columns the operator. The derivatives must
/// come from a normalized family, i.e. Re <psi|d_mu psi> = 0.
RealMat pure_state_drho_overlaps(const Vec& psi, const std::vector<Vec>& derivs,
                                 const OperatorSet& s);

/// Residual matrix C - 1/4 dRho^T g^{-1} dRho of the pure-state operator
/// bound; positive semidefinite whenever g is nondegenerate.
struct QcrbResidual {
  RealMat residual;
  double min_eig = 0.0;
  bool degenerate = false;
};
QcrbResidual operator_qcrb_residual(const Vec& psi, const OperatorSet& s,
                                    const GeometricTensor& gt,
                                    const RealMat& drho_overlaps);

/// Self-bound on the metric in adjugate (polynomial) form, one report per
/// diagonal entry: 4 det(g) g_aa >= -(Omega adj(g) Omega)_aa, plus the
/// matrix-level positive-semidefiniteness report of
/// 4 det(g) g + Omega adj(g) Omega.
struct MetricSelfBound {
  std::vector<BoundReport> diagonal;
  BoundReport matrix_psd;
  double det_g = 0.0;
  bool degenerate = false;
};
MetricSelfBound metric_self_bound(const GeometricTensor& gt,
                                  double tol_scale = 1.0);

/// The three index-explicit 3D inequalities with numerator and denominator
/// written out as polynomials in g and Omega entries. Nondegenerate points
/// report the ratio form g_aa >= N_a / (4 det g); degenerate points fall
/// back to the polynomial form.
std::vector<BoundReport> bound_3d_explicit(const GeometricTensor& gt,
                                           double tol_scale = 1.0);

/// Determinant inequality det g >= det(Omega/2); the right-hand side is
/// exactly zero in odd dimensions.
BoundReport robertson_det(const GeometricTensor& gt, double tol_scale = 1.0);

}  // namespace qgbound
