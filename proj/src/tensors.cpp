#include "spinmet/tensors.hpp"

#include <cmath>

namespace spinmet {

SphericalTensorBasis::SphericalTensorBasis(SpinQuantum j_system) : j_system_(j_system) {
    const int dim = j_system_.dim();
    const int two_J = j_system_.two_j();
    tensors_.reserve((dim) * (dim));
    for (int j = 0; j <= j_max(); ++j) {
        const double reduced = reduced_element(j);
        for (int m = j; m >= -j; --m) {
            Matrix t = Matrix::Zero(dim, dim);
            for (int col = 0; col < dim; ++col) {
                const int two_mp = j_system_.two_m_of_row(col);
                const int two_m_out = two_mp + 2 * m;
                if (std::abs(two_m_out) > two_J) continue;
                const double cg =
                    clebsch_gordan(two_J, two_mp, 2 * j, 2 * m, two_J, two_m_out);
                if (cg == 0.0) continue;
                t(j_system_.row_of_two_m(two_m_out), col) = cg * reduced / std::sqrt(dim);
            }
            norms_sq_.push_back(t.squaredNorm());
            tensors_.push_back(std::move(t));
        }
    }
}

int SphericalTensorBasis::index(int j, int m) const {
    if (j < 0 || j > j_max() || std::abs(m) > j)
        throw InputError("SphericalTensorBasis: (j, m) out of range");
    return j * j + (j - m);
}

const Matrix& SphericalTensorBasis::tensor(int j, int m) const { return tensors_[index(j, m)]; }

double SphericalTensorBasis::norm_sq(int j, int m) const { return norms_sq_[index(j, m)]; }

double SphericalTensorBasis::reduced_element(int j) const { return std::sqrt(2.0 * j + 1.0); }

SphericalTensorBasis build_tensor_basis(SpinQuantum j_system) {
    return SphericalTensorBasis(j_system);
}

double TensorDecomposition::sphere_norm(int j) const {
    double total = 0.0;
    for (const Complex& c : coefficients[j]) total += std::norm(c);
    return std::sqrt(total);
}

TensorDecomposition decompose(const DensityMatrix& rho, const SphericalTensorBasis& basis) {
    if (!(rho.j() == basis.j_system()))
        throw InputError("decompose: state and basis dimensions differ");
    TensorDecomposition dec{rho.j(), {}};
    dec.coefficients.resize(basis.j_max() + 1);
    for (int j = 0; j <= basis.j_max(); ++j) {
        dec.coefficients[j].resize(2 * j + 1);
        for (int m = j; m >= -j; --m) {
            const Matrix& t = basis.tensor(j, m);
            dec.coefficients[j][j - m] =
                (t.adjoint() * rho.rho()).trace() / basis.norm_sq(j, m);
        }
    }
    return dec;
}

Matrix reconstruct(const TensorDecomposition& dec, const SphericalTensorBasis& basis) {
    const int dim = basis.j_system().dim();
    Matrix rho = Matrix::Zero(dim, dim);
    for (int j = 0; j <= basis.j_max(); ++j)
        for (int m = j; m >= -j; --m) rho += dec.coeff(j, m) * basis.tensor(j, m);
    return rho;
}

TensorDecomposition rotate_decomposition(const TensorDecomposition& dec, const Rotation& r) {
    if (!(r.j == dec.j_system))
        throw InputError("rotate_decomposition: rotation acts on a different J");
    TensorDecomposition out{dec.j_system, {}};
    out.coefficients.resize(dec.coefficients.size());
    for (int j = 0; j < static_cast<int>(dec.coefficients.size()); ++j) {
        // Integer-j D-matrices are single valued, so the Euler triple of r
        // identifies the rotation unambiguously.
        const Matrix d = wigner_D(SpinQuantum(2 * j), r.angles);
        Vector coeffs(2 * j + 1);
        for (int k = 0; k < 2 * j + 1; ++k) coeffs[k] = dec.coefficients[j][k];
        Vector rotated = d * coeffs;
        out.coefficients[j].resize(2 * j + 1);
        for (int k = 0; k < 2 * j + 1; ++k) out.coefficients[j][k] = rotated[k];
    }
    return out;
}

double qmi(const DensityMatrix& rho, const SphericalTensorBasis& basis) {
    if (!(rho.j() == basis.j_system()))
        throw InputError("qmi: state and basis dimensions differ");
    double total = 0.0;
    for (int j = 1; j <= basis.j_max(); ++j) {
        for (int m = j; m >= -j; --m) {
            if (m == 0) continue;
            const Complex mean = (rho.rho() * basis.tensor(j, m)).trace();
            total += double(m) * m * std::norm(mean) / basis.norm_sq(j, m);
        }
    }
    return total;
}

double MassDistribution::qmi() const {
    double total = 0.0;
    for (int j = 0; j < static_cast<int>(spheres.size()); ++j)
        for (int k = 0; k < spheres[j].size(); ++k) {
            const double m = j - k;
            total += m * m * spheres[j][k];
        }
    return total;
}

MassDistribution mass_distribution(const DensityMatrix& rho, const SphericalTensorBasis& basis) {
    if (!(rho.j() == basis.j_system()))
        throw InputError("mass_distribution: state and basis dimensions differ");
    MassDistribution dist;
    dist.spheres.resize(basis.j_max() + 1);
    dist.total_mass.resize(basis.j_max() + 1);
    for (int j = 0; j <= basis.j_max(); ++j) {
        dist.spheres[j].resize(2 * j + 1);
        for (int m = j; m >= -j; --m) {
            const Complex mean = (rho.rho() * basis.tensor(j, m)).trace();
            dist.spheres[j][j - m] = std::norm(mean) / basis.norm_sq(j, m);
        }
        dist.total_mass[j] = dist.spheres[j].sum();
    }
    return dist;
}

}  // namespace spinmet
