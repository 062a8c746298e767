#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace framelab {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

}  // namespace framelab
