#pragma once

#include <Eigen/Dense>
#include <complex>

namespace shs {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline bool all_finite(const CMat& m) {
    return m.allFinite();
}

inline CMat hermitize(const CMat& m) {
    return 0.5 * (m + m.adjoint());
}

} // namespace shs
