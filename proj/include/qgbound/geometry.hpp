#pragma once

#include <vector>

#include "qgbound/common.hpp"
#include "qgbound/models.hpp"
#include "qgbound/numlin.hpp"
#include "qgbound/states.hpp"

namespace qgbound {

/// Quantum metric g (symmetric) and Berry curvature omega (antisymmetric)
/// of an occupied subspace, D x D in the parameter-space dimension.
struct GeometricTensor {
  RealMat g;
  RealMat omega;
  RealVec k;
};

/// Generators of parameter-space translation in the parallel-transport
/// gauge: -i L_mu |psi> equals the projected derivative |D_mu psi>, and
/// <psi| L_mu |psi> = 0.
struct GeneratorSet {
  std::vector<Mat> lambdas;
  std::string gauge = "projected-derivative";
};

/// Perturbation-sum route: band sums over occupied/unoccupied pairs with
/// <m|d_mu psi_n> = <m|d_mu H|n> / (E_n - E_m). Gauge-invariant output.
/// Throws GapClosing when the gap above the occupied set closes.
GeometricTensor qgt_perturbative(const BlochModel& model, const RealVec& k,
                                 int n_occ);
GeometricTensor qgt_perturbative(const EigenSystem& es,
                                 const std::vector<Mat>& grad_h,
                                 const RealVec& k, int n_occ);

/// Independent finite-difference route built from central differences of
/// the gauge-invariant occupied projector P(k):
///   g_mn  = Re Tr[dP_m (1-P) dP_n],  omega_mn = i Tr(P [dP_m, dP_n]).
GeometricTensor qgt_fd(const BlochModel& model, const RealVec& k, int n_occ,
                       double step = 1e-5);

/// Generators from a normalized state and its parameter derivatives:
/// L_mu = i(|D_mu psi><psi| - |psi><D_mu psi|) with the projected
/// derivative |D_mu psi> = (1 - |psi><psi|) |d_mu psi>.
GeneratorSet build_generators(const Vec& psi, const std::vector<Vec>& derivs);

/// A single band eigenstate and its perturbation-sum derivatives in the
/// parallel gauge (<psi|d_mu psi> = 0). Throws GapClosing when the band is
/// degenerate with any other.
struct BandDerivatives {
  Vec psi;
  std::vector<Vec> derivs;
};
BandDerivatives band_derivatives(const BlochModel& model, const RealVec& k,
                                 int band);

}  // namespace qgbound
