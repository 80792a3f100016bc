#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgbound/common.hpp"
#include "qgbound/qcrb.hpp"
#include "qgbound/states.hpp"

namespace qgbound {

/// Multi-observable uncertainty relation in adjugate form, one residual per
/// operator: V_a = 4 det(C) <dL_a^2> - <[L_a, L_m]> adj(C)^{mn} <[L_n, L_a]>.
/// Composite (sum/product over operators) bounds are derived fields; they
/// require a nondegenerate covariance matrix.
struct UncertaintyReport {
  std::vector<std::string> labels;
  std::vector<double> variances;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> residuals;
  std::vector<double> tols;
  double det_cov = 0.0;
  bool degenerate = false;
  bool satisfied = false;
  std::optional<double> sum_margin;
  std::optional<double> product_margin;
};

/// Two-operator Robertson-Schroedinger relation:
/// <dA^2><dB^2> >= 1/4 |<{dA,dB}>|^2 + 1/4 |<[A,B]>|^2.
BoundReport robertson_schrodinger(const Vec& psi, const Mat& a, const Mat& b,
                                  double tol_scale = 1.0);

UncertaintyReport multi_op_bound(const Vec& psi, const OperatorSet& s,
                                 double tol_scale = 1.0);

/// Three-operator relations evaluated term-by-term from raw expectation
/// values (an independent route from multi_op_bound's matrix algebra).
UncertaintyReport three_op_explicit(const Vec& psi, const OperatorSet& s,
                                    double tol_scale = 1.0);

}  // namespace qgbound
