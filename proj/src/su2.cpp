#include "spinmet/su2.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace spinmet {
namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_2pi(double x) {
    double w = std::fmod(x, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

// Active SO(3) matrix of the rotation by `angle` about `axis` (Rodrigues).
Eigen::Matrix3d rodrigues(const Vec3& n, double angle) {
    Eigen::Matrix3d cross;
    cross << 0, -n.z(), n.y(),
             n.z(), 0, -n.x(),
            -n.y(), n.x(), 0;
    return std::cos(angle) * Eigen::Matrix3d::Identity()
         + std::sin(angle) * cross
         + (1.0 - std::cos(angle)) * (n * n.transpose());
}

constexpr int kMaxFactorial = 200;

long double factorial(int n) {
    static const auto table = [] {
        std::array<long double, kMaxFactorial + 1> f{};
        f[0] = 1.0L;
        for (int i = 1; i <= kMaxFactorial; ++i) f[i] = f[i - 1] * i;
        return f;
    }();
    return table[n];
}

void validate_jm(int two_j, int two_m, const char* who) {
    if (two_j < 0)
        throw InputError(std::string(who) + ": 2j must be non-negative");
    if (std::abs(two_m) > two_j)
        throw InputError(std::string(who) + ": |m| exceeds j");
    if ((two_j - two_m) % 2 != 0)
        throw InputError(std::string(who) + ": j and m differ by a non-integer");
}

}  // namespace

EulerAngles EulerAngles::canonical() const {
    EulerAngles e{wrap_2pi(alpha), std::fmod(beta, 2.0 * kPi), wrap_2pi(gamma)};
    if (e.beta < 0.0) e.beta += 2.0 * kPi;
    if (e.beta > kPi) {
        // Ry(beta) = Rz(pi) Ry(2pi - beta) Rz(pi)
        e.beta = 2.0 * kPi - e.beta;
        e.alpha = wrap_2pi(e.alpha + kPi);
        e.gamma = wrap_2pi(e.gamma + kPi);
    }
    return e;
}

SpinOps spin_operators(SpinQuantum j) {
    const int dim = j.dim();
    Matrix jz = Matrix::Zero(dim, dim);
    Matrix jplus = Matrix::Zero(dim, dim);
    for (int row = 0; row < dim; ++row) {
        const int two_m = j.two_m_of_row(row);
        jz(row, row) = 0.5 * two_m;
        if (row > 0) {
            // <J,M+1| J+ |J,M> = sqrt((J-M)(J+M+1)), exact in integer arithmetic
            const long jmm = (j.two_j() - two_m) / 2;
            const long jmp1 = (j.two_j() + two_m) / 2 + 1;
            jplus(row - 1, row) = std::sqrt(static_cast<double>(jmm * jmp1));
        }
    }
    const Matrix jminus = jplus.adjoint();
    SpinOps ops{j, Matrix(), Matrix(), std::move(jz), std::move(jplus), Matrix()};
    ops.jx = (ops.jplus + jminus) / 2.0;
    ops.jy = (ops.jplus - jminus) / Complex(0.0, 2.0);
    ops.jminus = jminus;
    return ops;
}

Matrix wigner_D(SpinQuantum j, const EulerAngles& angles) {
    const SpinOps ops = spin_operators(j);
    const Matrix little_d = expi_hermitian(ops.jy, angles.beta);
    const int dim = j.dim();
    Vector left(dim), right(dim);
    for (int row = 0; row < dim; ++row) {
        const double m = j.m_of_row(row);
        left[row] = std::exp(Complex(0.0, -angles.alpha * m));
        right[row] = std::exp(Complex(0.0, -angles.gamma * m));
    }
    return left.asDiagonal() * little_d * right.asDiagonal();
}

Rotation rotation_from_euler(SpinQuantum j, const EulerAngles& angles) {
    return Rotation{j, wigner_D(j, angles), angles};
}

Rotation rotation_about_axis(SpinQuantum j, const Vec3& axis, double angle) {
    if (std::abs(axis.norm() - 1.0) > 1e-9)
        throw InputError("rotation_about_axis: axis must be a unit vector");
    const SpinOps ops = spin_operators(j);
    Rotation rot{j, expi_hermitian(ops.along(axis), angle), euler_from_so3(rodrigues(axis, angle))};
    return rot;
}

Eigen::Matrix3d so3_from_euler(const EulerAngles& angles) {
    return rodrigues(Vec3::UnitZ(), angles.alpha) * rodrigues(Vec3::UnitY(), angles.beta)
         * rodrigues(Vec3::UnitZ(), angles.gamma);
}

// z-y-z Euler factorization of an SO(3) matrix, R = Rz(alpha) Ry(beta) Rz(gamma).
EulerAngles euler_from_so3(const Eigen::Matrix3d& r) {
    EulerAngles e;
    const double cb = std::clamp(r(2, 2), -1.0, 1.0);
    e.beta = std::acos(cb);
    if (std::abs(std::sin(e.beta)) > 1e-10) {
        e.alpha = std::atan2(r(1, 2), r(0, 2));
        e.gamma = std::atan2(r(2, 1), -r(2, 0));
    } else if (cb > 0.0) {
        e.alpha = std::atan2(r(1, 0), r(0, 0));  // pure z rotation
        e.gamma = 0.0;
    } else {
        e.alpha = std::atan2(-r(1, 0), -r(0, 0));
        e.gamma = 0.0;
    }
    return e;
}

Rotation compose(const Rotation& second, const Rotation& first) {
    if (!(second.j == first.j)) throw InputError("compose: rotations act on different J");
    return Rotation{first.j, Matrix(second.unitary * first.unitary),
                    euler_from_so3(so3_from_euler(second.angles) * so3_from_euler(first.angles))};
}

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M) {
    validate_jm(two_j1, two_m1, "clebsch_gordan(j1,m1)");
    validate_jm(two_j2, two_m2, "clebsch_gordan(j2,m2)");
    validate_jm(two_J, two_M, "clebsch_gordan(J,M)");

    if (two_M != two_m1 + two_m2) return 0.0;
    if (two_J < std::abs(two_j1 - two_j2) || two_J > two_j1 + two_j2) return 0.0;
    if ((two_j1 + two_j2 + two_J) % 2 != 0) return 0.0;

    // Everything below is integer once halved.
    const int a = (two_j1 + two_j2 - two_J) / 2;
    const int b = (two_j1 - two_j2 + two_J) / 2;
    const int c = (-two_j1 + two_j2 + two_J) / 2;
    const int d = (two_j1 + two_j2 + two_J) / 2 + 1;
    if (d > kMaxFactorial)
        throw NumericalError("clebsch_gordan: quantum numbers out of supported range");

    const int j1p = (two_j1 + two_m1) / 2, j1m = (two_j1 - two_m1) / 2;
    const int j2p = (two_j2 + two_m2) / 2, j2m = (two_j2 - two_m2) / 2;
    const int Jp = (two_J + two_M) / 2, Jm = (two_J - two_M) / 2;

    const long double prefactor =
        std::sqrt((two_J + 1) * factorial(a) * factorial(b) * factorial(c) / factorial(d)
                  * factorial(j1p) * factorial(j1m) * factorial(j2p) * factorial(j2m)
                  * factorial(Jp) * factorial(Jm));

    const int k_lo = std::max({0, (two_j2 - two_J - two_m1) / 2, (two_j1 - two_J + two_m2) / 2});
    const int k_hi = std::min({a, j1m, j2p});
    long double sum = 0.0L;
    for (int k = k_lo; k <= k_hi; ++k) {
        const long double denom = factorial(k) * factorial(a - k) * factorial(j1m - k)
                                * factorial(j2p - k)
                                * factorial((two_J - two_j2 + two_m1) / 2 + k)
                                * factorial((two_J - two_j1 - two_m2) / 2 + k);
        sum += (k % 2 == 0 ? 1.0L : -1.0L) / denom;
    }
    return static_cast<double>(prefactor * sum);
}

}  // namespace spinmet
