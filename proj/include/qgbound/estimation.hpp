#pragma once

#include <functional>
#include <vector>

#include "qgbound/common.hpp"
#include "qgbound/models.hpp"
#include "qgbound/states.hpp"

namespace qgbound {

/// Parametrized density matrix rho(k): Hermitian, positive semidefinite,
/// unit trace. When no analytic derivative is supplied, derivatives() falls
/// back to central differences of the (gauge-invariant) evaluator.
struct DensityFamily {
  int dim = 0;
  int nparams = 0;
  std::function<Mat(const RealVec&)> rho;
  std::function<std::vector<Mat>(const RealVec&)> drho;  // optional
  double fd_step = 1e-5;

  std::vector<Mat> derivatives(const RealVec& k) const;
};

/// Symmetric logarithmic derivatives L_mu solving
/// d_mu rho = 1/2 (rho L_mu + L_mu rho) on the support of rho; matrix
/// elements across (near-)null eigenpairs are set to zero.
struct SLDSet {
  std::vector<Mat> ls;
  double support_cutoff = 0.0;
};

SLDSet sld(const Mat& rho, const std::vector<Mat>& drho);

/// Quantum Fisher information matrix F_mn = 1/2 Tr rho {L_m, L_n};
/// equals the covariance matrix of the SLD set and reduces to 4g for pure
/// state families.
RealMat qfim(const Mat& rho, const SLDSet& slds);

/// Mixed-state operator bound: residual = C - dRho^T F^{-1} dRho with
/// dRho_{mu a} = Tr(d_mu rho O_a); positive semidefinite, with equality
/// when the operators are the SLDs themselves.
struct MixedQcrbResidual {
  RealMat residual;
  double min_eig = 0.0;
  bool degenerate = false;
};
MixedQcrbResidual mixed_qcrb_residual(const Mat& rho,
                                      const std::vector<Mat>& drho,
                                      const OperatorSet& s);

/// Density family of the n_occ lowest bands of a Bloch model,
/// rho(k) = P(k)/n_occ, with the analytic perturbation-sum derivative.
DensityFamily band_density_family(const BlochModel& model, int n_occ);

}  // namespace qgbound
