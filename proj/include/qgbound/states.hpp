#pragma once

#include <string>
#include <vector>

#include "qgbound/common.hpp"
#include "qgbound/numlin.hpp"

namespace qgbound {

/// Ordered set of Hermitian operators treated as observables/generators.
struct OperatorSet {
  std::vector<Mat> ops;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(ops.size()); }
  int dim() const { return ops.empty() ? 0 : static_cast<int>(ops[0].rows()); }
};

/// Covariances C_ab = 1/2 <{dA, dB}>, commutators K_ab = -i<[A, B]> (real),
/// and means <A> of an operator set on a pure state.
struct CovCommPair {
  RealMat cov;
  RealMat comm;
  RealVec means;
};

/// Orthonormal basis of the n_occ lowest eigenvectors; the projector
/// P = basis * basis^dagger is idempotent and gauge-invariant.
struct OccupiedSubspace {
  Mat basis;
  Mat projector() const { return basis * basis.adjoint(); }
  int rank() const { return static_cast<int>(basis.cols()); }
};

double expectation(const Vec& psi, const Mat& op);

CovCommPair cov_comm(const Vec& psi, const OperatorSet& s);

/// Spin operators sigma_mu (x) I_orb acting on a spin-1/2 times orbital
/// Hilbert space; orbital_dim = 1 gives the bare Pauli matrices.
OperatorSet spin_operators(int orbital_dim = 1);

/// Angular momentum set {L_x, L_y, L_z} for spin ell (2*ell integer),
/// built from ladder operators in the |ell, m> basis with m descending.
/// hbar = 1, so [L_x, L_y] = i L_z.
OperatorSet angular_momentum_ops(double ell);

/// The n_occ lowest eigenvectors of an eigensystem. Throws GapClosing when
/// the gap above the occupied set is below 1e-8 of the spectral range.
OccupiedSubspace slater_geometry_inputs(const EigenSystem& es, int n_occ);

}  // namespace qgbound
