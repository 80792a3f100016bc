#include "qgbound/models.hpp"

#include <cmath>

namespace qgbound {

namespace {

Mat kron2(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::array<Mat, 3> make_pauli() {
  const Complex i(0.0, 1.0);
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  return {sx, sy, sz};
}

}  // namespace

const std::array<Mat, 3>& pauli_matrices() {
  static const std::array<Mat, 3> pauli = make_pauli();
  return pauli;
}

const std::array<Mat, 5>& gamma_matrices() {
  static const std::array<Mat, 5> gammas = [] {
    const auto& s = pauli_matrices();
    const Mat id2 = Mat::Identity(2, 2);
    // Spin sigma is the slow (first) factor, orbital tau the fast one,
    // matching the (s up, p up, s down, p down) basis order.
    return std::array<Mat, 5>{kron2(s[0], s[0]), kron2(s[1], s[0]),
                              kron2(s[2], s[0]), kron2(id2, s[1]),
                              kron2(id2, s[2])};
  }();
  return gammas;
}

DVector d_vector(const KPoint& k, const TIParams& p) {
  DVector out;
  out.d.setZero();
  out.jac.setZero();

  out.d(0) = p.A * std::sin(k.ky);
  out.d(1) = -p.A * std::sin(k.kx);
  out.d(2) = 0.0;
  out.d(3) = p.A * std::sin(k.kz);
  out.d(4) = p.M + 6.0 * p.B -
             2.0 * p.B * (std::cos(k.kx) + std::cos(k.ky) + std::cos(k.kz));

  out.jac(1, 0) = p.A * std::cos(k.ky);
  out.jac(0, 1) = -p.A * std::cos(k.kx);
  out.jac(2, 3) = p.A * std::cos(k.kz);
  out.jac(0, 4) = 2.0 * p.B * std::sin(k.kx);
  out.jac(1, 4) = 2.0 * p.B * std::sin(k.ky);
  out.jac(2, 4) = 2.0 * p.B * std::sin(k.kz);
  return out;
}

Mat ti_hamiltonian(const KPoint& k, const TIParams& p, const FieldVector& field) {
  const auto& gam = gamma_matrices();
  const auto& s = pauli_matrices();
  const Mat id2 = Mat::Identity(2, 2);
  const DVector dv = d_vector(k, p);

  Mat h = Mat::Zero(4, 4);
  for (int i = 0; i < 5; ++i) h += dv.d(i) * gam[i];
  // The field couples to spin only: sigma_alpha acts on the spin factor,
  // identity on the orbital factor.
  h += field.Bx * kron2(s[0], id2) + field.By * kron2(s[1], id2) +
       field.Bz * kron2(s[2], id2);
  return h;
}

std::vector<Mat> ti_gradient(const KPoint& k, const TIParams& p) {
  const auto& gam = gamma_matrices();
  const DVector dv = d_vector(k, p);
  std::vector<Mat> grad(3, Mat::Zero(4, 4));
  for (int mu = 0; mu < 3; ++mu)
    for (int i = 0; i < 5; ++i) grad[mu] += dv.jac(mu, i) * gam[i];
  return grad;
}

BlochModel ti_model(const TIParams& p, const FieldVector& field) {
  BlochModel m;
  m.dim = 4;
  m.nparams = 3;
  m.hamiltonian = [p, field](const RealVec& k) {
    return ti_hamiltonian(KPoint{k(0), k(1), k(2)}, p, field);
  };
  m.gradient = [p](const RealVec& k) {
    return ti_gradient(KPoint{k(0), k(1), k(2)}, p);
  };
  return m;
}

BlochModel ti_model_kz_plane(const TIParams& p, const FieldVector& field,
                             double kz) {
  BlochModel m;
  m.dim = 4;
  m.nparams = 2;
  m.hamiltonian = [p, field, kz](const RealVec& k) {
    return ti_hamiltonian(KPoint{k(0), k(1), kz}, p, field);
  };
  m.gradient = [p, kz](const RealVec& k) {
    auto g3 = ti_gradient(KPoint{k(0), k(1), kz}, p);
    return std::vector<Mat>{g3[0], g3[1]};
  };
  return m;
}

BlochModel two_band_model(int nparams, DField d, DFieldGrad grad_d) {
  BlochModel m;
  m.dim = 2;
  m.nparams = nparams;
  m.hamiltonian = [d](const RealVec& k) {
    const Eigen::Vector3d v = d(k);
    if (v.norm() < 1e-10)
      throw GapClosing("two_band_model: |d(k)| vanishes at the evaluated k");
    const auto& s = pauli_matrices();
    return Mat(v(0) * s[0] + v(1) * s[1] + v(2) * s[2]);
  };
  m.gradient = [nparams, grad_d](const RealVec& k) {
    const auto jac = grad_d(k);
    const auto& s = pauli_matrices();
    std::vector<Mat> out;
    out.reserve(nparams);
    for (int mu = 0; mu < nparams; ++mu)
      out.push_back(jac(0, mu) * s[0] + jac(1, mu) * s[1] + jac(2, mu) * s[2]);
    return out;
  };
  return m;
}

}  // namespace qgbound
