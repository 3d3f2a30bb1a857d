#pragma once

#include "spinmet/linalg.hpp"

namespace spinmet {

// Spin quantum number, stored as 2J so half-integer spins stay exact.
// The associated Hilbert space uses the Dicke basis ordered M = J, J-1, ..., -J
// (row 0 carries the largest projection); every matrix in this library
// follows that convention.
class SpinQuantum {
public:
    explicit SpinQuantum(int two_j) : two_j_(two_j) {
        if (two_j < 0) throw InputError("SpinQuantum: 2J must be non-negative");
    }
    static SpinQuantum for_particles(int n_particles) {
        if (n_particles < 0) throw InputError("SpinQuantum: negative particle count");
        return SpinQuantum(n_particles);  // J = N/2
    }

    int two_j() const { return two_j_; }
    double j() const { return 0.5 * two_j_; }
    int dim() const { return two_j_ + 1; }

    // Doubled projection 2M of a basis row, and its inverse.
    int two_m_of_row(int row) const { return two_j_ - 2 * row; }
    int row_of_two_m(int two_m) const { return (two_j_ - two_m) / 2; }
    double m_of_row(int row) const { return 0.5 * two_m_of_row(row); }

    bool operator==(const SpinQuantum&) const = default;

private:
    int two_j_;
};

// The collective spin operators for a single spin-J sector.
struct SpinOps {
    SpinQuantum j;
    Matrix jx, jy, jz, jplus, jminus;

    Matrix along(const Vec3& axis) const { return axis.x() * jx + axis.y() * jy + axis.z() * jz; }
};

// z-y-z Euler angles: the rotation is e^{-i alpha Jz} e^{-i beta Jy} e^{-i gamma Jz}.
struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    // Wraps into [0,2pi) x [0,pi] x [0,2pi).  Only used when formatting output;
    // internal computations accept any finite triple.
    EulerAngles canonical() const;
};

struct Rotation {
    SpinQuantum j;
    Matrix unitary;
    // Euler triple generating the same rotation.  For half-integer J the
    // reconstructed unitary may differ by a global sign (SU(2) double cover).
    EulerAngles angles;
};

SpinOps spin_operators(SpinQuantum j);

// Wigner D-matrix, D^j_{m,m'} = <j,m| e^{-i a Jz} e^{-i b Jy} e^{-i c Jz} |j,m'>.
// The little-d factor comes from the spectral decomposition of Jy, which is
// well conditioned for the moderate J used here.
Matrix wigner_D(SpinQuantum j, const EulerAngles& angles);

Rotation rotation_from_euler(SpinQuantum j, const EulerAngles& angles);

// exp(-i * angle * axis.J); the axis must be unit length to 1e-9.
Rotation rotation_about_axis(SpinQuantum j, const Vec3& axis, double angle);

// Active SO(3) matrix of the z-y-z triple, Rz(alpha) Ry(beta) Rz(gamma),
// and its inverse factorization.
Eigen::Matrix3d so3_from_euler(const EulerAngles& angles);
EulerAngles euler_from_so3(const Eigen::Matrix3d& r);

// The rotation "second after first"; Euler provenance tracked through SO(3).
Rotation compose(const Rotation& second, const Rotation& first);

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
// convention.  All quantum numbers are doubled (2j, 2m) so half-integers are
// exact.  Returns 0 when M != m1+m2 or the triangle condition fails; throws
// on malformed quantum numbers (|m| > j, parity mismatch within a pair).
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

}  // namespace spinmet
