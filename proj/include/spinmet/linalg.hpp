#pragma once

#include <complex>

#include <Eigen/Dense>

#include "spinmet/errors.hpp"

namespace spinmet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;

inline double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_hermitian(const Matrix& a, double tol, const char* who) {
    if (a.rows() != a.cols())
        throw InputError(std::string(who) + ": matrix is not square");
    if (hermiticity_defect(a) > tol)
        throw InputError(std::string(who) + ": matrix is not Hermitian");
}

// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
struct HermEig {
    Eigen::VectorXd values;
    Matrix vectors;
};

inline HermEig eig_hermitian(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Hermitian eigendecomposition failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// exp(-i * t * H) for Hermitian H, built from the spectral decomposition.
inline Matrix expi_hermitian(const Matrix& h, double t) {
    const HermEig eig = eig_hermitian(h);
    Vector phases(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k)
        phases[k] = std::exp(Complex(0.0, -t * eig.values[k]));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

// Principal square root of a PSD Hermitian matrix; small negative
// eigenvalues (roundoff) are clamped to zero, genuine ones rejected.
inline Matrix sqrt_psd(const Matrix& a, double negative_tol = 1e-10) {
    const HermEig eig = eig_hermitian((a + a.adjoint()) / 2.0);
    Eigen::VectorXd roots(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        double v = eig.values[k];
        if (v < -negative_tol)
            throw InputError("matrix square root: input is not positive semidefinite");
        roots[k] = std::sqrt(std::max(v, 0.0));
    }
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

inline double frobenius_distance(const Matrix& a, const Matrix& b) {
    return (a - b).norm();
}

inline double unitarity_defect(const Matrix& u) {
    return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace spinmet
