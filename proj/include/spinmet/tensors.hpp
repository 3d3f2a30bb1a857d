#pragma once

#include <vector>

#include "spinmet/states.hpp"

namespace spinmet {

// Orthonormal spherical-tensor operator basis T_jm for a spin-J system,
// j = 0..2J, m = -j..j.  Matrix elements come from the Wigner-Eckart theorem,
// <J,M|T_jm|J,M'> = <J,M'; j,m|J,M> <J||T_j||J> / sqrt(2J+1), with the reduced
// elements fixed to sqrt(2j+1) so every ||T_jm||^2 = 1 under the trace inner
// product.  Rescalings cancel in every physical quantity built from the basis.
class SphericalTensorBasis {
public:
    explicit SphericalTensorBasis(SpinQuantum j_system);

    SpinQuantum j_system() const { return j_system_; }
    int j_max() const { return j_system_.two_j(); }

    // m runs j, j-1, ..., -j within sphere j.
    const Matrix& tensor(int j, int m) const;
    double norm_sq(int j, int m) const;
    double reduced_element(int j) const;

private:
    int index(int j, int m) const;
    SpinQuantum j_system_;
    std::vector<Matrix> tensors_;
    std::vector<double> norms_sq_;
};

SphericalTensorBasis build_tensor_basis(SpinQuantum j_system);

// Expansion rho = sum_jm tau_jm T_jm under the trace inner product.
struct TensorDecomposition {
    SpinQuantum j_system;
    std::vector<std::vector<Complex>> coefficients;  // [j][j - m]

    Complex coeff(int j, int m) const { return coefficients[j][j - m]; }
    // Euclidean norm of the coefficient vector of sphere j (rotation invariant).
    double sphere_norm(int j) const;
};

TensorDecomposition decompose(const DensityMatrix& rho, const SphericalTensorBasis& basis);

Matrix reconstruct(const TensorDecomposition& dec, const SphericalTensorBasis& basis);

// Rotates the expansion coefficients sphere by sphere with the Wigner
// D-matrices of r; equals decompose(r rho r^dag).
TensorDecomposition rotate_decomposition(const TensorDecomposition& dec, const Rotation& r);

// Quantum moment of inertia, sum_{j>=1} sum_m m^2 |<T_jm>|^2 / ||T_jm||^2
// (both signs of m counted).  Satisfies 2*QMI <= susceptibility, with
// equality on pure states.
double qmi(const DensityMatrix& rho, const SphericalTensorBasis& basis);

// Fictional mass |<T_jm>|^2 / ||T_jm||^2 resolved over the parallels of each
// sphere; entries ordered m = j..-j (northern hemisphere first).
struct MassDistribution {
    std::vector<Eigen::VectorXd> spheres;  // [j], length 2j+1
    std::vector<double> total_mass;        // per sphere

    double qmi() const;
};

MassDistribution mass_distribution(const DensityMatrix& rho, const SphericalTensorBasis& basis);

}  // namespace spinmet
