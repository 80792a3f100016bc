#include "qgbound/numlin.hpp"

#include <cmath>

namespace qgbound {

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_symmetric(const RealMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

EigenSystem eigh(const Mat& h) {
  if (!is_hermitian(h))
    throw NonHermitianInput("eigh: input matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success)
    throw Error("eigh: eigensolver did not converge");

  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index j = 0; j < es.vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    es.vectors.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex z = es.vectors(imax, j);
    const double mag = std::abs(z);
    if (mag > 0.0) es.vectors.col(j) *= std::conj(z) / mag;
  }
  return es;
}

double det_threshold(const RealMat& m) {
  const int n = static_cast<int>(m.rows());
  const double scale = std::abs(m.trace()) / n;
  return 1e-12 * std::pow(scale, n);
}

double bound_scale_floor(const RealMat& m, double diag) {
  const int n = static_cast<int>(m.rows());
  const double scale = std::abs(m.trace()) / n;
  return 4e-4 * std::pow(scale, n) * std::max(std::abs(diag), scale);
}

namespace {

// Adjugate via cofactor minors; only used for degenerate matrices of
// dimension > 3, where det*inverse is unavailable.
RealMat adjugate_cofactor(const RealMat& m) {
  const Eigen::Index n = m.rows();
  RealMat adj(n, n);
  RealMat minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc) = m(r, c);
          ++cc;
        }
        ++rr;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(j, i) = sign * minor.determinant();
    }
  }
  return adj;
}

}  // namespace

DetAdjInv sym_det_adj_inv(const RealMat& m_in) {
  if (m_in.rows() != m_in.cols())
    throw DimMismatch("sym_det_adj_inv: matrix must be square");
  const Eigen::Index n = m_in.rows();
  const RealMat m = 0.5 * (m_in + m_in.transpose());

  DetAdjInv r;
  if (n == 1) {
    r.det = m(0, 0);
    r.adj = RealMat::Identity(1, 1);
  } else if (n == 2) {
    const double a = m(0, 0), b = m(0, 1), d = m(1, 1);
    r.det = a * d - b * b;
    r.adj.resize(2, 2);
    r.adj << d, -b, -b, a;
  } else if (n == 3) {
    const double a = m(0, 0), b = m(0, 1), c = m(0, 2);
    const double d = m(1, 1), e = m(1, 2), f = m(2, 2);
    r.adj.resize(3, 3);
    r.adj << d * f - e * e, c * e - b * f, b * e - c * d,
             c * e - b * f, a * f - c * c, b * c - a * e,
             b * e - c * d, b * c - a * e, a * d - b * b;
    r.det = a * d * f + 2.0 * b * c * e - a * e * e - d * c * c - f * b * b;
  } else {
    Eigen::FullPivLU<RealMat> lu(m);
    r.det = lu.determinant();
    if (std::abs(r.det) > det_threshold(m)) {
      r.adj = r.det * lu.inverse();
    } else {
      r.adj = adjugate_cofactor(m);
    }
    r.adj = (0.5 * (r.adj + r.adj.transpose())).eval();
  }

  r.degenerate = !(std::abs(r.det) > det_threshold(m));
  if (!r.degenerate) r.inv = (r.adj / r.det).eval();
  return r;
}

double psd_residual(const RealMat& m) {
  if (!is_symmetric(m))
    throw NonHermitianInput("psd_residual: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<RealMat> solver(0.5 * (m + m.transpose()),
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double psd_residual(const Mat& m) {
  if (!is_hermitian(m))
    throw NonHermitianInput("psd_residual: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()),
                                            Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace qgbound
