#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qgbound/common.hpp"

namespace qgbound {

/// Seeded random matrix/state source. Gaussians come from a hand-rolled
/// Box-Muller on mt19937_64 so that a fixed seed reproduces the same
/// stream on any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return std::generate_canonical<double, 53>(gen_);
  }

  double normal() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(uniform() * (hi - lo + 1)) % (hi - lo + 1);
  }

  Vec unit_vector(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cnormal();
    return v / v.norm();
  }

  Vec cvector(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cnormal();
    return v;
  }

  Mat cmatrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cnormal();
    return m;
  }

  Mat hermitian(int dim) {
    const Mat a = cmatrix(dim, dim);
    return 0.5 * (a + a.adjoint());
  }

  RealMat rmatrix(int rows, int cols) {
    RealMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

  RealMat symmetric(int dim) {
    const RealMat a = rmatrix(dim, dim);
    return 0.5 * (a + a.transpose());
  }

  RealMat spd(int dim) {
    const RealMat a = rmatrix(dim, dim);
    return RealMat(a.transpose() * a) + 1e-3 * RealMat::Identity(dim, dim);
  }

  RealMat antisymmetric(int dim) {
    const RealMat a = rmatrix(dim, dim);
    return 0.5 * (a - a.transpose());
  }

  Mat unitary(int dim) {
    const Mat a = cmatrix(dim, dim);
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
      const Complex d = r(j, j);
      const double mag = std::abs(d);
      if (mag > 0) q.col(j) *= d / mag;
    }
    return q;
  }

  /// Full-rank density matrix: random eigenbasis, eigenvalues bounded away
  /// from zero.
  Mat density(int dim) {
    const Mat u = unitary(dim);
    RealVec lam(dim);
    double total = 0.0;
    for (int i = 0; i < dim; ++i) {
      lam(i) = 0.05 + uniform();
      total += lam(i);
    }
    Mat rho = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      rho += (lam(i) / total) * u.col(i) * u.col(i).adjoint();
    return 0.5 * (rho + rho.adjoint());
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qgbound
