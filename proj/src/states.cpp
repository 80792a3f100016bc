#include "qgbound/states.hpp"

#include <cmath>

#include "qgbound/models.hpp"

namespace qgbound {

namespace {

void require_normalized(const Vec& psi, const char* who) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-10)
    throw std::invalid_argument(std::string(who) + ": state is not normalized");
}

}  // namespace

double expectation(const Vec& psi, const Mat& op) {
  if (op.rows() != op.cols() || op.rows() != psi.size())
    throw DimMismatch("expectation: operator and state dimensions differ");
  require_normalized(psi, "expectation");
  const Complex e = psi.dot(op * psi);
  const double scale = std::max(1.0, std::abs(e));
  if (std::abs(e.imag()) > 1e-12 * scale)
    throw NonHermitianInput("expectation: value has a nonreal residue");
  return e.real();
}

CovCommPair cov_comm(const Vec& psi, const OperatorSet& s) {
  const int n = s.size();
  if (n == 0) throw DimMismatch("cov_comm: empty operator set");
  for (const Mat& op : s.ops) {
    if (op.rows() != psi.size() || op.cols() != psi.size())
      throw DimMismatch("cov_comm: operator and state dimensions differ");
    if (!is_hermitian(op))
      throw NonHermitianInput("cov_comm: operator set contains a "
                              "non-Hermitian matrix");
  }
  require_normalized(psi, "cov_comm");

  Mat w(psi.size(), n);
  for (int a = 0; a < n; ++a) w.col(a) = s.ops[a] * psi;

  const Mat gram = w.adjoint() * w;  // gram(a,b) = <O_a O_b>
  RealVec means(n);
  for (int a = 0; a < n; ++a) means(a) = (psi.dot(w.col(a))).real();

  CovCommPair out;
  out.means = means;
  out.cov = gram.real() - means * means.transpose();
  out.cov = (0.5 * (out.cov + out.cov.transpose())).eval();
  out.comm = 2.0 * gram.imag();
  out.comm = (0.5 * (out.comm - out.comm.transpose())).eval();
  return out;
}

OperatorSet spin_operators(int orbital_dim) {
  const auto& s = pauli_matrices();
  const Mat id = Mat::Identity(orbital_dim, orbital_dim);
  OperatorSet set;
  set.labels = {"sx", "sy", "sz"};
  for (int mu = 0; mu < 3; ++mu) {
    Mat op(2 * orbital_dim, 2 * orbital_dim);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        op.block(i * orbital_dim, j * orbital_dim, orbital_dim, orbital_dim) =
            s[mu](i, j) * id;
    set.ops.push_back(op);
  }
  return set;
}

OperatorSet angular_momentum_ops(double ell) {
  const double two_ell = 2.0 * ell;
  const long rounded = std::lround(two_ell);
  if (ell < 0.0 || std::abs(two_ell - static_cast<double>(rounded)) > 1e-9)
    throw InvalidSpin("angular_momentum_ops: 2*ell must be a nonnegative integer");

  const int dim = static_cast<int>(rounded) + 1;
  Mat lp = Mat::Zero(dim, dim);  // raising operator; basis m = ell .. -ell
  for (int i = 1; i < dim; ++i) {
    const double m = ell - i;  // L+ |m> -> |m+1>, i.e. row i-1, column i
    lp(i - 1, i) = std::sqrt(ell * (ell + 1.0) - m * (m + 1.0));
  }
  const Mat lm = lp.adjoint();

  OperatorSet set;
  set.labels = {"Lx", "Ly", "Lz"};
  set.ops.push_back(0.5 * (lp + lm));
  set.ops.push_back(Complex(0.0, -0.5) * (lp - lm));
  Mat lz = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) lz(i, i) = ell - i;
  set.ops.push_back(lz);
  return set;
}

OccupiedSubspace slater_geometry_inputs(const EigenSystem& es, int n_occ) {
  const int dim = static_cast<int>(es.values.size());
  if (n_occ < 1 || n_occ >= dim)
    throw std::invalid_argument("slater_geometry_inputs: need 1 <= n_occ < dim");
  const double range =
      std::max(es.values(dim - 1) - es.values(0), 1e-300);
  const double gap = es.values(n_occ) - es.values(n_occ - 1);
  if (gap <= 1e-8 * range)
    throw GapClosing("slater_geometry_inputs: occupied set touches the rest "
                     "of the spectrum");
  return OccupiedSubspace{es.vectors.leftCols(n_occ)};
}

}  // namespace qgbound
