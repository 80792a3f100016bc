#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qgbound {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianInput : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct GapClosing : Error { using Error::Error; };
struct InvalidSpin : Error { using Error::Error; };
struct WrongDimension : Error { using Error::Error; };
struct WrongArity : Error { using Error::Error; };
struct InvalidDensity : Error { using Error::Error; };
struct InvalidCount : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace qgbound
