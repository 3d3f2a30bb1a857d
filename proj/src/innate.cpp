#include "spinmet/innate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace spinmet {
namespace {

constexpr double kPi = 3.14159265358979323846;

Vec3 axis_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Evaluates F(n) = QFI(rho, n.J) from one eigendecomposition of rho.
class AxisObjective {
public:
    explicit AxisObjective(const DensityMatrix& rho) {
        const SpinOps ops = spin_operators(rho.j());
        const HermEig eig = eig_hermitian(rho.rho());
        probs_ = eig.values;
        x_ = eig.vectors.adjoint() * ops.jx * eig.vectors;
        y_ = eig.vectors.adjoint() * ops.jy * eig.vectors;
        z_ = eig.vectors.adjoint() * ops.jz * eig.vectors;
    }

    double at(const Vec3& n) const {
        double total = 0.0;
        for (Eigen::Index i = 0; i < probs_.size(); ++i) {
            for (Eigen::Index k = i + 1; k < probs_.size(); ++k) {
                const double sum = probs_[i] + probs_[k];
                if (sum <= 1e-12) continue;
                const double diff = probs_[i] - probs_[k];
                const Complex element =
                    n.x() * x_(i, k) + n.y() * y_(i, k) + n.z() * z_(i, k);
                total += 4.0 * diff * diff / sum * std::norm(element);
            }
        }
        return total;
    }

    double at(double theta, double phi) const { return at(axis_from_angles(theta, phi)); }

    Eigen::Matrix3d quadratic_form() const {
        Eigen::Matrix3d q = Eigen::Matrix3d::Zero();
        const Matrix* comps[3] = {&x_, &y_, &z_};
        for (Eigen::Index i = 0; i < probs_.size(); ++i) {
            for (Eigen::Index k = i + 1; k < probs_.size(); ++k) {
                const double sum = probs_[i] + probs_[k];
                if (sum <= 1e-12) continue;
                const double diff = probs_[i] - probs_[k];
                const double w = 4.0 * diff * diff / sum;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        q(a, b) += w * ((*comps[a])(i, k) * std::conj((*comps[b])(i, k))).real();
            }
        }
        return q;
    }

private:
    Eigen::VectorXd probs_;
    Matrix x_, y_, z_;
};

struct Candidate {
    double theta, phi, value;
};

// Standard Nelder-Mead on (theta, phi), maximizing.
Candidate refine_simplex(const AxisObjective& objective, const Candidate& start, double tol) {
    using Point = Eigen::Vector2d;
    const double step = 0.15;
    std::array<Point, 3> verts = {Point(start.theta, start.phi),
                                  Point(start.theta + step, start.phi),
                                  Point(start.theta, start.phi + step)};
    std::array<double, 3> vals;
    for (int k = 0; k < 3; ++k) vals[k] = objective.at(verts[k][0], verts[k][1]);

    const auto order = [&] {
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] > vals[b]; });
        std::array<Point, 3> v2;
        std::array<double, 3> f2;
        for (int k = 0; k < 3; ++k) {
            v2[k] = verts[idx[k]];
            f2[k] = vals[idx[k]];
        }
        verts = v2;
        vals = f2;
    };

    for (int iter = 0; iter < 200; ++iter) {
        order();
        const double spread = std::max((verts[0] - verts[2]).norm(), (verts[1] - verts[2]).norm());
        if (spread < tol) break;

        const Point centroid = (verts[0] + verts[1]) / 2.0;
        const Point reflected = centroid + (centroid - verts[2]);
        const double f_r = objective.at(reflected[0], reflected[1]);
        if (f_r > vals[0]) {
            const Point expanded = centroid + 2.0 * (reflected - centroid);
            const double f_e = objective.at(expanded[0], expanded[1]);
            if (f_e > f_r) {
                verts[2] = expanded;
                vals[2] = f_e;
            } else {
                verts[2] = reflected;
                vals[2] = f_r;
            }
        } else if (f_r > vals[1]) {
            verts[2] = reflected;
            vals[2] = f_r;
        } else {
            const Point contracted = centroid + 0.5 * (verts[2] - centroid);
            const double f_c = objective.at(contracted[0], contracted[1]);
            if (f_c > vals[2]) {
                verts[2] = contracted;
                vals[2] = f_c;
            } else {
                for (int k = 1; k < 3; ++k) {
                    verts[k] = verts[0] + 0.5 * (verts[k] - verts[0]);
                    vals[k] = objective.at(verts[k][0], verts[k][1]);
                }
            }
        }
    }
    order();
    return {verts[0][0], verts[0][1], vals[0]};
}

}  // namespace

AxisQuadraticForm axis_quadratic_form(const DensityMatrix& rho) {
    const AxisObjective objective(rho);
    const Eigen::Matrix3d q = objective.quadratic_form();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(q);
    return {q, solver.eigenvalues()[2], solver.eigenvectors().col(2)};
}

InnateResult innate_entanglement(const DensityMatrix& rho, int grid_points, double refine_tol) {
    if (grid_points < 8) throw InputError("innate_entanglement: need at least 8 grid points");
    if (refine_tol <= 0.0) throw InputError("innate_entanglement: tolerance must be positive");

    const AxisObjective objective(rho);

    std::vector<InnateResult::TracePoint> trace;
    trace.reserve(grid_points + 3);
    // Coordinate axes first so the susceptibility itself is always a candidate.
    trace.push_back({0.0, 0.0, objective.at(0.0, 0.0)});
    trace.push_back({kPi / 2.0, 0.0, objective.at(kPi / 2.0, 0.0)});
    trace.push_back({kPi / 2.0, kPi / 2.0, objective.at(kPi / 2.0, kPi / 2.0)});

    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < grid_points; ++k) {
        // Fibonacci lattice on the upper half-sphere
        const double z = (k + 0.5) / grid_points;
        const double theta = std::acos(z);
        const double phi = std::fmod(2.0 * kPi * k / golden, 2.0 * kPi);
        trace.push_back({theta, phi, objective.at(theta, phi)});
    }

    Candidate best{0.0, 0.0, -1.0};
    double grid_max = -1.0;
    for (const auto& pt : trace) grid_max = std::max(grid_max, pt.value);
    int ties = 0;
    for (const auto& pt : trace) {
        if (pt.value >= grid_max - 1e-9 * (1.0 + std::abs(grid_max))) {
            ++ties;
            // Lexicographically smallest (theta, phi) among tied grid optima.
            if (best.value < 0.0 || pt.theta < best.theta - 1e-15
                || (std::abs(pt.theta - best.theta) <= 1e-15 && pt.phi < best.phi))
                best = {pt.theta, pt.phi, pt.value};
        }
    }

    const Candidate refined = refine_simplex(objective, best, refine_tol);
    const Candidate winner = refined.value >= best.value ? refined : best;

    // R maps n.J onto Jz: the inverse of e^{-i phi Jz} e^{-i theta Jy}.
    const EulerAngles euler{0.0, -winner.theta, -winner.phi};
    return InnateResult{winner.value, rotation_from_euler(rho.j(), euler),
                        axis_from_angles(winner.theta, winner.phi), ties > 1, std::move(trace)};
}

InterferometerSpec mz_design_from_innate(const InnateResult& result) {
    const SpinQuantum j = result.optimal_rotation.j;
    // F_Q(rho, spec) = F(U_axis^dag U_pre rho ...), so U_pre = R_max with a
    // trivial axis rotation realizes the innate value; the post rotation
    // undoes the splitter so theta = 0 composes to the identity.
    Rotation pre = result.optimal_rotation;
    Rotation axis = rotation_about_axis(j, Vec3::UnitZ(), 0.0);
    Rotation post{j, pre.unitary.adjoint(),
                  EulerAngles{-pre.angles.gamma, -pre.angles.beta, -pre.angles.alpha}};
    return InterferometerSpec(std::move(pre), std::move(axis), std::move(post));
}

}  // namespace spinmet
