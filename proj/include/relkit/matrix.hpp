#pragma once

#include <Eigen/Dense>
#include <complex>

namespace relkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline bool is_finite(const Matrix& m) {
    return m.allFinite();
}

/// (m + m^H)/2
inline Matrix hermitize(const Matrix& m) {
    return 0.5 * (m + m.adjoint());
}

inline double asymmetry_residual(const Matrix& m) {
    return (m - m.adjoint()).norm();
}

/// Largest singular value.
inline double spectral_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

inline Matrix identity(Index n) {
    return Matrix::Identity(n, n);
}

} // namespace relkit
