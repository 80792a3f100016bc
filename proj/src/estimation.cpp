#include "qgbound/estimation.hpp"

#include <cmath>

#include "qgbound/numlin.hpp"

namespace qgbound {

namespace {

void validate_density(const Mat& rho) {
  if (!is_hermitian(rho, 1e-10))
    throw InvalidDensity("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho.trace().imag()) > 1e-12)
    throw InvalidDensity("density matrix does not have unit trace");
  if (psd_residual(rho) < -1e-10)
    throw InvalidDensity("density matrix has a negative eigenvalue");
}

}  // namespace

std::vector<Mat> DensityFamily::derivatives(const RealVec& k) const {
  if (drho) return drho(k);
  std::vector<Mat> out;
  out.reserve(nparams);
  for (int mu = 0; mu < nparams; ++mu) {
    RealVec kp = k, km = k;
    kp(mu) += fd_step;
    km(mu) -= fd_step;
    Mat d = (rho(kp) - rho(km)) / (2.0 * fd_step);
    // d rho is exactly traceless; remove the O(eps/h) rounding residue,
    // which the SLD solve would otherwise amplify across small eigenvalues
    d -= (d.trace() / static_cast<double>(d.rows())) *
         Mat::Identity(d.rows(), d.cols());
    out.push_back(0.5 * (d + d.adjoint()));
  }
  return out;
}

SLDSet sld(const Mat& rho, const std::vector<Mat>& drho) {
  validate_density(rho);
  const EigenSystem es = eigh(rho);
  const int dim = static_cast<int>(es.values.size());
  const double cutoff = 1e-10 * es.values.maxCoeff();

  SLDSet out;
  out.support_cutoff = cutoff;
  out.ls.reserve(drho.size());
  for (const Mat& d : drho) {
    if (d.rows() != dim || d.cols() != dim)
      throw DimMismatch("sld: derivative dimension differs from rho");
    const Mat w = es.vectors.adjoint() * d * es.vectors;
    Mat l = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const double denom = es.values(i) + es.values(j);
        if (denom > cutoff) l(i, j) = 2.0 * w(i, j) / denom;
      }
    out.ls.push_back(es.vectors * l * es.vectors.adjoint());
  }
  return out;
}

RealMat qfim(const Mat& rho, const SLDSet& slds) {
  const int nparams = static_cast<int>(slds.ls.size());
  RealMat f(nparams, nparams);
  for (int mu = 0; mu < nparams; ++mu) {
    if (slds.ls[mu].rows() != rho.rows())
      throw DimMismatch("qfim: SLD dimension differs from rho");
    for (int nu = mu; nu < nparams; ++nu) {
      const Complex v =
          0.5 * (rho * (slds.ls[mu] * slds.ls[nu] + slds.ls[nu] * slds.ls[mu]))
                    .trace();
      f(mu, nu) = f(nu, mu) = v.real();
    }
  }
  return f;
}

MixedQcrbResidual mixed_qcrb_residual(const Mat& rho,
                                      const std::vector<Mat>& drho,
                                      const OperatorSet& s) {
  validate_density(rho);
  const int nops = s.size();
  const int nparams = static_cast<int>(drho.size());
  for (const Mat& op : s.ops)
    if (op.rows() != rho.rows() || op.cols() != rho.cols())
      throw DimMismatch("mixed_qcrb_residual: operator dimension differs "
                        "from rho");

  const SLDSet l = sld(rho, drho);
  const RealMat f = qfim(rho, l);
  const DetAdjInv dai = sym_det_adj_inv(f);

  MixedQcrbResidual out;
  if (dai.degenerate) {
    out.degenerate = true;
    out.min_eig = std::nan("");
    return out;
  }

  RealVec means(nops);
  for (int a = 0; a < nops; ++a) means(a) = (rho * s.ops[a]).trace().real();

  RealMat cov(nops, nops);
  for (int a = 0; a < nops; ++a)
    for (int b = a; b < nops; ++b) {
      const double v = (rho * s.ops[a] * s.ops[b]).trace().real();
      cov(a, b) = cov(b, a) = v - means(a) * means(b);
    }

  RealMat dr(nparams, nops);
  for (int mu = 0; mu < nparams; ++mu)
    for (int a = 0; a < nops; ++a)
      dr(mu, a) = (drho[mu] * s.ops[a]).trace().real();

  out.residual = cov - dr.transpose() * (*dai.inv) * dr;
  out.residual = (0.5 * (out.residual + out.residual.transpose())).eval();
  out.min_eig = psd_residual(out.residual);
  return out;
}

DensityFamily band_density_family(const BlochModel& model, int n_occ) {
  DensityFamily fam;
  fam.dim = model.dim;
  fam.nparams = model.nparams;
  fam.rho = [model, n_occ](const RealVec& k) {
    const EigenSystem es = eigh(model.hamiltonian(k));
    const int dim = static_cast<int>(es.values.size());
    const double range = std::max(es.values(dim - 1) - es.values(0), 1e-300);
    if (es.values(n_occ) - es.values(n_occ - 1) <= 1e-8 * range)
      throw GapClosing("band_density_family: gap closes at the evaluated k");
    const Mat occ = es.vectors.leftCols(n_occ);
    return Mat(occ * occ.adjoint() / static_cast<double>(n_occ));
  };
  fam.drho = [model, n_occ](const RealVec& k) {
    const EigenSystem es = eigh(model.hamiltonian(k));
    const auto grad_h = model.gradient(k);
    const int dim = static_cast<int>(es.values.size());
    const double range = std::max(es.values(dim - 1) - es.values(0), 1e-300);
    if (es.values(n_occ) - es.values(n_occ - 1) <= 1e-8 * range)
      throw GapClosing("band_density_family: gap closes at the evaluated k");

    std::vector<Mat> out;
    out.reserve(grad_h.size());
    for (const Mat& dh : grad_h) {
      const Mat w = es.vectors.adjoint() * dh * es.vectors;
      Mat dp = Mat::Zero(dim, dim);
      for (int n = 0; n < n_occ; ++n)
        for (int m = n_occ; m < dim; ++m) {
          const Complex amp = w(m, n) / (es.values(n) - es.values(m));
          dp += es.vectors.col(m) * amp * es.vectors.col(n).adjoint();
        }
      dp = (dp + dp.adjoint()).eval();
      out.push_back(dp / static_cast<double>(n_occ));
    }
    return out;
  };
  return fam;
}

}  // namespace qgbound
