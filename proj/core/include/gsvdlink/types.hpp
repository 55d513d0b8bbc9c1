#pragma once

#include <complex>
#include <Eigen/Dense>

namespace gsvdlink {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::Index;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLightSpeedMs = 2.998e8;

}  // namespace gsvdlink
