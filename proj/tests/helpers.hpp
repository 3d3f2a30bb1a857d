#pragma once

#include <random>

#include "spinmet/states.hpp"

namespace spinmet::test {

inline Vector random_unit(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector v(dim);
    for (int r = 0; r < dim; ++r) v[r] = Complex(gauss(rng), gauss(rng));
    return v / v.norm();
}

// Ginibre-induced mixed state; `floor` mixes in identity to keep the spectrum
// away from zero when a test needs a well-conditioned state.
inline Matrix random_density_raw(int dim, std::mt19937_64& rng, double floor = 0.0) {
    std::normal_distribution<double> gauss;
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    if (floor > 0.0) {
        rho = (1.0 - floor) * rho + floor / dim * Matrix::Identity(dim, dim);
        rho = (rho + rho.adjoint()) / 2.0;
        rho /= rho.trace().real();
    }
    return rho;
}

inline DensityMatrix random_state(SpinQuantum j, std::mt19937_64& rng, double floor = 0.0) {
    return DensityMatrix(j, random_density_raw(j.dim(), rng, floor));
}

inline PureState random_pure(SpinQuantum j, std::mt19937_64& rng) {
    return PureState(j, random_unit(j.dim(), rng));
}

inline Vec3 random_axis(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vec3 axis(gauss(rng), gauss(rng), gauss(rng));
    while (axis.norm() < 1e-3) axis = Vec3(gauss(rng), gauss(rng), gauss(rng));
    return axis.normalized();
}

inline Rotation random_rotation(SpinQuantum j, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    return rotation_about_axis(j, random_axis(rng), angle(rng));
}

inline EulerAngles random_euler(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> full(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_real_distribution<double> half(0.0, 3.14159265358979323846);
    return {full(rng), half(rng), full(rng)};
}

}  // namespace spinmet::test
