#pragma once

#include <optional>

#include "qgbound/common.hpp"

namespace qgbound {

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending; each
/// eigenvector's phase is fixed so its largest-magnitude component is real
/// and positive.
struct EigenSystem {
  RealVec values;
  Mat vectors;  // orthonormal columns
};

bool is_hermitian(const Mat& m, double tol = 1e-12);
bool is_symmetric(const RealMat& m, double tol = 1e-12);

EigenSystem eigh(const Mat& h);

/// Determinant, adjugate and (when nondegenerate) inverse of a real
/// symmetric matrix. adj(M)·M = det(M)·I holds for any M; the inverse is
/// only returned when |det| exceeds the scale-aware threshold below, so
/// adjugate-based (polynomial) identities remain usable at det = 0.
struct DetAdjInv {
  double det = 0.0;
  RealMat adj;
  std::optional<RealMat> inv;
  bool degenerate = false;
};

/// Scale-aware degeneracy threshold: 1e-12 * (|trace|/dim)^dim.
double det_threshold(const RealMat& m);

/// Magnitude floor for adjugate-form bound residuals. Residuals like
/// 4 det(M) M_aa - (quadratic in adj M) cancel exactly at det M = 0, so
/// their tolerance must be measured against the magnitude of the cancelled
/// polynomial terms rather than the (near-zero) result.
double bound_scale_floor(const RealMat& m, double diag);

DetAdjInv sym_det_adj_inv(const RealMat& m);

/// Minimum eigenvalue of a symmetric / Hermitian matrix. Callers compare
/// against -tol * trace-scale to decide positive semidefiniteness.
double psd_residual(const RealMat& m);
double psd_residual(const Mat& m);

}  // namespace qgbound
