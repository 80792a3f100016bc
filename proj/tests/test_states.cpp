#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgbound/models.hpp"
#include "qgbound/random.hpp"
#include "qgbound/states.hpp"

using namespace qgbound;

namespace {

Vec basis_state(int dim, int i) {
  Vec v = Vec::Zero(dim);
  v(i) = 1.0;
  return v;
}

OperatorSet random_ops(Rng& rng, int dim, int count) {
  OperatorSet s;
  for (int i = 0; i < count; ++i) {
    s.ops.push_back(rng.hermitian(dim));
    s.labels.push_back("op" + std::to_string(i));
  }
  return s;
}

}  // namespace

TEST_CASE("expectation basics") {
  const Mat sz = pauli_matrices()[2];
  CHECK(expectation(basis_state(2, 0), sz) == doctest::Approx(1.0));

  Vec plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(expectation(plus, sz) == doctest::Approx(0.0));

  CHECK_THROWS_AS(expectation(basis_state(3, 0), sz), DimMismatch);
  CHECK_THROWS_AS(expectation(Vec(2.0 * plus), sz), std::invalid_argument);
}

TEST_CASE("cov_comm validates states and operators") {
  OperatorSet bad;
  Mat m(2, 2);
  m << 1.0, Complex(0, 1), Complex(0, 1), 2.0;
  bad.ops = {m};
  bad.labels = {"bad"};
  CHECK_THROWS_AS(cov_comm(basis_state(2, 0), bad), NonHermitianInput);
  CHECK_THROWS_AS(cov_comm(Vec(0.5 * basis_state(2, 0)), spin_operators(1)),
                  std::invalid_argument);
}

TEST_CASE("lower band of d.sigma has <sigma> = -d/|d|") {
  Rng rng(31);
  const auto& s = pauli_matrices();
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d d(rng.normal(), rng.normal(), rng.normal());
    if (d.norm() < 0.1) continue;
    const Mat h = d(0) * s[0] + d(1) * s[1] + d(2) * s[2];
    const Vec psi = eigh(h).vectors.col(0);
    for (int mu = 0; mu < 3; ++mu)
      CHECK(expectation(psi, s[mu]) ==
            doctest::Approx(-d(mu) / d.norm()).epsilon(1e-10));
  }
}

TEST_CASE("cov_comm of the Pauli set on spin-up") {
  const CovCommPair cc = cov_comm(basis_state(2, 0), spin_operators(1));
  CHECK(cc.cov(0, 0) == doctest::Approx(1.0));
  CHECK(cc.cov(1, 1) == doctest::Approx(1.0));
  CHECK(cc.cov(2, 2) == doctest::Approx(0.0));
  CHECK(cc.cov(0, 1) == doctest::Approx(0.0));
  CHECK(cc.comm(0, 1) == doctest::Approx(2.0));  // -i<[sx, sy]> = 2<sz>
  CHECK(cc.means(2) == doctest::Approx(1.0));
}

TEST_CASE("single-operator covariance is a nonnegative variance") {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    OperatorSet s = random_ops(rng, 4, 1);
    const CovCommPair cc = cov_comm(rng.unit_vector(4), s);
    CHECK(cc.cov(0, 0) >= -1e-12);
  }
}

TEST_CASE("covariance matrix is PSD and commutators are consistent") {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 4;
    const Vec psi = rng.unit_vector(dim);
    const OperatorSet s = random_ops(rng, dim, 3);
    const CovCommPair cc = cov_comm(psi, s);

    CHECK(psd_residual(cc.cov) >= -1e-10 * std::max(cc.cov.trace(), 1.0));
    CHECK((cc.comm + cc.comm.transpose()).cwiseAbs().maxCoeff() <= 1e-14);

    // dual route: K_ab = -i<[A, B]> from the full complex expectation
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const Mat commutator = s.ops[a] * s.ops[b] - s.ops[b] * s.ops[a];
        const Complex expct = psi.dot(commutator * psi);
        CHECK(std::abs(expct.real()) <= 1e-12);
        CHECK(std::abs(cc.comm(a, b) - expct.imag()) <= 1e-12);
      }
  }
}

TEST_CASE("Pauli covariance on the d.sigma lower band is a projector") {
  Rng rng(34);
  const auto& s = pauli_matrices();
  for (int trial = 0; trial < 30; ++trial) {
    Eigen::Vector3d d(rng.normal(), rng.normal(), rng.normal());
    if (d.norm() < 0.1) continue;
    const Eigen::Vector3d dhat = d / d.norm();
    const Mat h = d(0) * s[0] + d(1) * s[1] + d(2) * s[2];
    const Vec psi = eigh(h).vectors.col(0);
    const CovCommPair cc = cov_comm(psi, spin_operators(1));

    const RealMat expected =
        RealMat::Identity(3, 3) - dhat * dhat.transpose();
    CHECK((cc.cov - expected).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(sym_det_adj_inv(cc.cov).det) <= 1e-12);
  }
}

TEST_CASE("angular momentum operators satisfy the su(2) algebra") {
  for (int two_ell = 1; two_ell <= 8; ++two_ell) {
    const OperatorSet l = angular_momentum_ops(0.5 * two_ell);
    const Complex i(0, 1);
    const Mat cxy = l.ops[0] * l.ops[1] - l.ops[1] * l.ops[0];
    const Mat cyz = l.ops[1] * l.ops[2] - l.ops[2] * l.ops[1];
    const Mat czx = l.ops[2] * l.ops[0] - l.ops[0] * l.ops[2];
    CHECK((cxy - i * l.ops[2]).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((cyz - i * l.ops[0]).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((czx - i * l.ops[1]).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("angular momentum moments on |l, m>") {
  for (int two_ell = 2; two_ell <= 8; two_ell += 2) {
    const double ell = 0.5 * two_ell;
    const OperatorSet l = angular_momentum_ops(ell);
    const int dim = two_ell + 1;
    for (int idx = 0; idx < dim; ++idx) {
      const double m = ell - idx;
      const Vec psi = basis_state(dim, idx);
      CHECK(expectation(psi, l.ops[2]) == doctest::Approx(m));
      const CovCommPair cc = cov_comm(psi, l);
      CHECK(cc.cov(2, 2) == doctest::Approx(0.0));  // <Lz^2> - m^2
      const double expected = 0.5 * (ell * ell + ell - m * m);
      CHECK(cc.cov(0, 0) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(cc.cov(1, 1) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(std::abs(sym_det_adj_inv(cc.cov).det) <= 1e-12);
    }
  }
}

TEST_CASE("angular_momentum_ops rejects invalid spins") {
  CHECK_THROWS_AS(angular_momentum_ops(0.3), InvalidSpin);
  CHECK_THROWS_AS(angular_momentum_ops(-1.0), InvalidSpin);
}

TEST_CASE("occupied subspace of the lattice model at the zone center") {
  const Mat h = ti_hamiltonian(KPoint{0, 0, 0}, TIParams{}, FieldVector{});
  const EigenSystem es = eigh(h);
  const OccupiedSubspace occ = slater_geometry_inputs(es, 2);
  CHECK(occ.rank() == 2);
  CHECK(es.values(0) == doctest::Approx(-0.3));
  CHECK(es.values(1) == doctest::Approx(-0.3));
}

TEST_CASE("occupied subspace projector is idempotent at random k") {
  Rng rng(35);
  const BlochModel model = ti_model(TIParams{}, FieldVector{0.1, 0.2, 0.3});
  for (int trial = 0; trial < 20; ++trial) {
    RealVec k(3);
    for (int i = 0; i < 3; ++i) k(i) = -M_PI + 2 * M_PI * rng.uniform();
    const OccupiedSubspace occ =
        slater_geometry_inputs(eigh(model.hamiltonian(k)), 2);
    const Mat p = occ.projector();
    CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("slater_geometry_inputs rejects bad occupation and closed gaps") {
  const Mat h = ti_hamiltonian(KPoint{0, 0, 0}, TIParams{}, FieldVector{});
  const EigenSystem es = eigh(h);
  CHECK_THROWS_AS(slater_geometry_inputs(es, 4), std::invalid_argument);
  // at the zone center the two lowest levels are Kramers degenerate
  CHECK_THROWS_AS(slater_geometry_inputs(es, 1), GapClosing);

  Mat tiny = Mat::Zero(3, 3);
  tiny(0, 0) = 0.0;
  tiny(1, 1) = 1e-12;
  tiny(2, 2) = 1.0;
  CHECK_THROWS_AS(slater_geometry_inputs(eigh(tiny), 1), GapClosing);
  CHECK_NOTHROW(slater_geometry_inputs(eigh(tiny), 2));
}
