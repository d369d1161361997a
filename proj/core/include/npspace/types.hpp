#pragma once

#include <complex>
#include <cstdint>
#include <limits>

#include <Eigen/Dense>

namespace npspace {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace npspace
