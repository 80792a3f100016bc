#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qgbound/common.hpp"

namespace qgbound {

/// Band parameters of the 3D class-AII topological insulator lattice model,
/// in eV. Defaults fit the Bi2Se3 family. Units a = hbar = 1.
struct TIParams {
  double M = -0.3;  // Dirac mass
  double A = 2.87;  // orbital hopping amplitude
  double B = 0.3;   // band-inversion amplitude
};

/// Zeeman field coupling to the spin sector, in eV.
struct FieldVector {
  double Bx = 0.0;
  double By = 0.0;
  double Bz = 0.0;
};

/// Crystal momentum, components in (-pi, pi].
struct KPoint {
  double kx = 0.0;
  double ky = 0.0;
  double kz = 0.0;
  Eigen::Vector3d vec() const { return {kx, ky, kz}; }
};

/// A parametrized Hermitian matrix family H(k) with analytic gradient.
/// `nparams` is the parameter-space dimension D; `dim` the Hilbert-space
/// dimension. Evaluation at distinct k is pure and freely parallel.
struct BlochModel {
  int dim = 0;
  int nparams = 0;
  std::function<Mat(const RealVec&)> hamiltonian;
  std::function<std::vector<Mat>(const RealVec&)> gradient;
};

const std::array<Mat, 3>& pauli_matrices();

/// The five 4x4 Dirac matrices {sx@tx, sy@tx, sz@tx, I@ty, I@tz} in the
/// (s up, p up, s down, p down) basis. Traceless, unitary, and mutually
/// anticommuting: {G_i, G_j} = 2 delta_ij.
const std::array<Mat, 5>& gamma_matrices();

/// Momentum dependence of the lattice model and its analytic gradient;
/// jac(mu, i) = d d_i / d k_mu.
struct DVector {
  Eigen::Matrix<double, 5, 1> d;
  Eigen::Matrix<double, 3, 5> jac;
};
DVector d_vector(const KPoint& k, const TIParams& p);

Mat ti_hamiltonian(const KPoint& k, const TIParams& p, const FieldVector& field);
std::vector<Mat> ti_gradient(const KPoint& k, const TIParams& p);

/// Full 3-parameter lattice model H(k) = d(k).Gamma + B.sigma.
BlochModel ti_model(const TIParams& p, const FieldVector& field);

/// Restriction of the lattice model to the plane kz = const, treated as a
/// 2D parameter space (kx, ky).
BlochModel ti_model_kz_plane(const TIParams& p, const FieldVector& field,
                             double kz = 0.0);

using DField = std::function<Eigen::Vector3d(const RealVec&)>;
/// Gradient of a d-field: column mu holds d d / d k_mu.
using DFieldGrad = std::function<Eigen::Matrix<double, 3, Eigen::Dynamic>(const RealVec&)>;

/// Generic two-band model H = d(k).sigma with eigenvalues +-|d(k)|.
/// Evaluation throws GapClosing when |d| < 1e-10.
BlochModel two_band_model(int nparams, DField d, DFieldGrad grad_d);

}  // namespace qgbound
