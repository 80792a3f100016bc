#include "qgbound/geometry.hpp"

#include <cmath>

namespace qgbound {

namespace {

constexpr double kGapRel = 1e-8;

void check_gap(const EigenSystem& es, int n_occ, const char* who) {
  const int dim = static_cast<int>(es.values.size());
  if (n_occ < 1 || n_occ >= dim)
    throw std::invalid_argument(std::string(who) + ": need 1 <= n_occ < dim");
  const double range = std::max(es.values(dim - 1) - es.values(0), 1e-300);
  if (es.values(n_occ) - es.values(n_occ - 1) <= kGapRel * range)
    throw GapClosing(std::string(who) + ": spectral gap above the occupied "
                     "set closes");
}

Mat occupied_projector(const BlochModel& model, const RealVec& k, int n_occ,
                       const char* who) {
  const EigenSystem es = eigh(model.hamiltonian(k));
  check_gap(es, n_occ, who);
  const Mat occ = es.vectors.leftCols(n_occ);
  return occ * occ.adjoint();
}

GeometricTensor tensor_from_t(const Mat& t, const RealVec& k) {
  GeometricTensor out;
  out.g = 0.5 * (t + t.transpose()).real();
  out.omega = (Complex(0, 1) * (t - t.transpose())).real();
  out.k = k;
  return out;
}

}  // namespace

GeometricTensor qgt_perturbative(const EigenSystem& es,
                                 const std::vector<Mat>& grad_h,
                                 const RealVec& k, int n_occ) {
  check_gap(es, n_occ, "qgt_perturbative");
  const int dim = static_cast<int>(es.values.size());
  const int nparams = static_cast<int>(grad_h.size());

  // A_mu(m, n) = <m|d_mu H|n> / (E_n - E_m), n occupied, m unoccupied.
  std::vector<Mat> a(nparams);
  for (int mu = 0; mu < nparams; ++mu) {
    const Mat w = es.vectors.adjoint() * grad_h[mu] * es.vectors;
    a[mu].resize(dim - n_occ, n_occ);
    for (int m = n_occ; m < dim; ++m)
      for (int n = 0; n < n_occ; ++n)
        a[mu](m - n_occ, n) = w(m, n) / (es.values(n) - es.values(m));
  }

  Mat t(nparams, nparams);
  for (int mu = 0; mu < nparams; ++mu)
    for (int nu = 0; nu < nparams; ++nu)
      t(mu, nu) = (a[mu].conjugate().cwiseProduct(a[nu])).sum();
  return tensor_from_t(t, k);
}

GeometricTensor qgt_perturbative(const BlochModel& model, const RealVec& k,
                                 int n_occ) {
  const EigenSystem es = eigh(model.hamiltonian(k));
  return qgt_perturbative(es, model.gradient(k), k, n_occ);
}

GeometricTensor qgt_fd(const BlochModel& model, const RealVec& k, int n_occ,
                       double step) {
  if (!(step >= 1e-7 && step <= 1e-3))
    throw std::invalid_argument("qgt_fd: step must lie in [1e-7, 1e-3]");
  const int nparams = model.nparams;

  const Mat p0 = occupied_projector(model, k, n_occ, "qgt_fd");
  const Mat q = Mat::Identity(p0.rows(), p0.cols()) - p0;

  std::vector<Mat> dp(nparams);
  for (int mu = 0; mu < nparams; ++mu) {
    RealVec kp = k, km = k;
    kp(mu) += step;
    km(mu) -= step;
    dp[mu] = (occupied_projector(model, kp, n_occ, "qgt_fd") -
              occupied_projector(model, km, n_occ, "qgt_fd")) /
             (2.0 * step);
  }

  Mat t(nparams, nparams);
  GeometricTensor out;
  out.omega.resize(nparams, nparams);
  for (int mu = 0; mu < nparams; ++mu)
    for (int nu = 0; nu < nparams; ++nu) {
      t(mu, nu) = (dp[mu] * q * dp[nu]).trace();
      out.omega(mu, nu) =
          (Complex(0, 1) * (p0 * (dp[mu] * dp[nu] - dp[nu] * dp[mu])).trace())
              .real();
    }
  out.g = 0.5 * (t + t.transpose()).real();
  out.omega = (0.5 * (out.omega - out.omega.transpose())).eval();
  out.k = k;
  return out;
}

GeneratorSet build_generators(const Vec& psi, const std::vector<Vec>& derivs) {
  GeneratorSet set;
  set.lambdas.reserve(derivs.size());
  for (const Vec& dpsi : derivs) {
    if (dpsi.size() != psi.size())
      throw DimMismatch("build_generators: derivative dimension differs from "
                        "the state");
    const Vec proj = dpsi - psi * psi.dot(dpsi);
    set.lambdas.push_back(Complex(0, 1) *
                          (proj * psi.adjoint() - psi * proj.adjoint()));
  }
  return set;
}

BandDerivatives band_derivatives(const BlochModel& model, const RealVec& k,
                                 int band) {
  const EigenSystem es = eigh(model.hamiltonian(k));
  const auto grad_h = model.gradient(k);
  const int dim = static_cast<int>(es.values.size());
  if (band < 0 || band >= dim)
    throw std::invalid_argument("band_derivatives: band index out of range");
  const double range = std::max(es.values(dim - 1) - es.values(0), 1e-300);
  for (int m = 0; m < dim; ++m)
    if (m != band &&
        std::abs(es.values(m) - es.values(band)) <= kGapRel * range)
      throw GapClosing("band_derivatives: band is degenerate");

  BandDerivatives out;
  out.psi = es.vectors.col(band);
  out.derivs.reserve(grad_h.size());
  for (const Mat& dh : grad_h) {
    const Mat w = es.vectors.adjoint() * dh * es.vectors;
    Vec dpsi = Vec::Zero(dim);
    for (int m = 0; m < dim; ++m) {
      if (m == band) continue;
      dpsi += es.vectors.col(m) * (w(m, band) / (es.values(band) - es.values(m)));
    }
    out.derivs.push_back(dpsi);
  }
  return out;
}

}  // namespace qgbound
