#pragma once

#include <complex>
#include <Eigen/Dense>

namespace dirac {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I_unit{0.0, 1.0};

}  // namespace dirac
