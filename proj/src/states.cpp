#include "spinmet/states.hpp"

#include <cmath>

namespace spinmet {
namespace {

constexpr double kPi = 3.14159265358979323846;

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void require_valid_n(int n_particles) {
    if (n_particles < 1) throw InputError("state constructor: need at least one particle");
}

}  // namespace

PureState::PureState(SpinQuantum j, Vector amplitudes) : j_(j), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != j_.dim())
        throw InputError("PureState: amplitude vector does not match 2J+1");
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12)
        throw InputError("PureState: amplitudes are not normalized");
}

PureState PureState::rotated(const Rotation& r) const {
    if (r.j != j_) throw InputError("PureState::rotated: rotation acts on a different J");
    Vector v = r.unitary * amplitudes_;
    v /= v.norm();
    return PureState(j_, std::move(v));
}

DensityMatrix::DensityMatrix(SpinQuantum j, Matrix rho) : j_(j), rho_(std::move(rho)) {
    if (rho_.rows() != j_.dim() || rho_.cols() != j_.dim())
        throw InputError("DensityMatrix: matrix does not match 2J+1");
    if (hermiticity_defect(rho_) > 1e-12)
        throw InputError("DensityMatrix: matrix is not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-12 || std::abs(rho_.trace().imag()) > 1e-12)
        throw InputError("DensityMatrix: trace is not 1");

    diagonal_ = true;
    for (int r = 0; r < rho_.rows() && diagonal_; ++r)
        for (int c = 0; c < rho_.cols(); ++c)
            if (r != c && rho_(r, c) != Complex(0.0, 0.0)) {
                diagonal_ = false;
                break;
            }

    if (diagonal_) {
        if (rho_.diagonal().real().minCoeff() < -1e-10)
            throw InputError("DensityMatrix: negative probability on the diagonal");
    } else {
        const double min_eig = eig_hermitian(rho_).values.minCoeff();
        if (min_eig < -1e-10)
            throw InputError("DensityMatrix: smallest eigenvalue " + std::to_string(min_eig)
                             + " is below the PSD tolerance");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.j(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::rotated(const Rotation& r) const {
    if (r.j != j_) throw InputError("DensityMatrix::rotated: rotation acts on a different J");
    Matrix out = r.unitary * rho_ * r.unitary.adjoint();
    out = (out + out.adjoint()) / 2.0;
    out /= out.trace().real();
    return DensityMatrix(j_, std::move(out));
}

void SectoredState::validate() const {
    double total = 0.0;
    for (const auto& s : sectors) {
        if (s.weight < 0.0) throw InputError("SectoredState: negative sector weight");
        total += s.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InputError("SectoredState: sector weights do not sum to 1");
}

PureState dicke(int n_particles, int two_m) {
    require_valid_n(n_particles);
    if (std::abs(two_m) > n_particles || (n_particles - two_m) % 2 != 0)
        throw InputError("dicke: invalid (N, m) pair");
    SpinQuantum j(n_particles);
    Vector amp = Vector::Zero(j.dim());
    amp[j.row_of_two_m(two_m)] = 1.0;
    return PureState(j, std::move(amp));
}

PureState coherent_spin_state(int n_particles, double theta, double phi) {
    require_valid_n(n_particles);
    SpinQuantum j(n_particles);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Vector amp(j.dim());
    for (int row = 0; row < j.dim(); ++row) {
        // row r holds M = J - r, so J+M = N-r spins along the orbital
        const int up = n_particles - row;
        const double mag = std::exp(0.5 * log_binomial(n_particles, up))
                         * std::pow(c, double(up)) * std::pow(s, double(row));
        amp[row] = mag * std::exp(Complex(0.0, phi * row));
    }
    amp /= amp.norm();
    return PureState(j, std::move(amp));
}

PureState cat_state(int n_particles, double relative_phase) {
    require_valid_n(n_particles);
    SpinQuantum j(n_particles);
    Vector amp = Vector::Zero(j.dim());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amp[0] = inv_sqrt2;
    amp[j.dim() - 1] = inv_sqrt2 * std::exp(Complex(0.0, relative_phase));
    return PureState(j, std::move(amp));
}

PureState kitten_state(int n_particles, int two_m) {
    require_valid_n(n_particles);
    if (two_m <= 0)
        throw InputError("kitten_state: m must be positive (m = 0 is a degenerate superposition)");
    if (two_m > n_particles || (n_particles - two_m) % 2 != 0)
        throw InputError("kitten_state: invalid (N, m) pair");
    SpinQuantum j(n_particles);
    Vector amp = Vector::Zero(j.dim());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amp[j.row_of_two_m(two_m)] = inv_sqrt2;
    amp[j.row_of_two_m(-two_m)] = inv_sqrt2;
    return PureState(j, std::move(amp));
}

PureState twin_fock_probe(int n_particles) {
    require_valid_n(n_particles);
    if (n_particles % 2 != 0) throw InputError("twin_fock_probe: N must be even");
    const PureState balanced = dicke(n_particles, 0);
    // e^{i pi/2 Jx} = rotation about x through -pi/2
    return balanced.rotated(rotation_about_axis(balanced.j(), Vec3::UnitX(), -kPi / 2.0));
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& components) {
    if (components.empty()) throw InputError("mix: no components");
    const SpinQuantum j = components.front().second.j();
    double total = 0.0;
    for (const auto& [w, state] : components) {
        if (!(state.j() == j)) throw InputError("mix: components live in different J sectors");
        if (w < 0.0) throw InputError("mix: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw InputError("mix: weights sum to " + std::to_string(total) + ", not 1");
    Matrix rho = Matrix::Zero(j.dim(), j.dim());
    for (const auto& [w, state] : components) rho += (w / total) * state.rho();
    rho = (rho + rho.adjoint()) / 2.0;
    rho /= rho.trace().real();
    return DensityMatrix(j, std::move(rho));
}

namespace {

// Per total-N diagonal probabilities of the two-condensate mixture.
struct CondensateSector {
    int n_total;
    double weight;
    Eigen::VectorXd probs;  // over Dicke rows of J = n_total/2
};

std::vector<CondensateSector> condensate_sectors(int n_min, int n_max) {
    if (n_min < 0 || n_min > n_max)
        throw InputError("two_condensate_mixture: need 0 <= n_min <= n_max");
    const double p = 1.0 / (n_max - n_min + 1);
    std::vector<CondensateSector> out;
    for (int n_total = 2 * n_min; n_total <= 2 * n_max; ++n_total) {
        SpinQuantum j(n_total);
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(j.dim());
        int count = 0;
        for (int a = std::max(n_min, n_total - n_max); a <= std::min(n_max, n_total - n_min); ++a) {
            const int b = n_total - a;
            diag[j.row_of_two_m(a - b)] += 1.0;
            ++count;
        }
        if (count == 0) continue;
        diag /= count;
        out.push_back({n_total, p * p * count, std::move(diag)});
    }
    return out;
}

}  // namespace

SectoredState two_condensate_mixture(int n_min, int n_max) {
    if (n_max > 100)
        throw InputError("two_condensate_mixture: dense sector matrices are capped at "
                         "n_max = 100; use two_condensate_mz_qfi for larger wells");
    SectoredState state;
    for (auto& sec : condensate_sectors(n_min, n_max)) {
        SpinQuantum j(sec.n_total);
        Matrix rho = Matrix::Zero(j.dim(), j.dim());
        rho.diagonal() = sec.probs.cast<Complex>();
        state.sectors.push_back({sec.weight, DensityMatrix(j, std::move(rho))});
    }
    state.validate();
    return state;
}

double two_condensate_mz_qfi(int n_min, int n_max) {
    // The Mach-Zehnder susceptibility per sector is the QFI of the diagonal
    // sector state with generator Jy (the z-generator conjugated through the
    // input beam splitter).  Jy only couples neighboring projections, so each
    // sector costs O(dim).
    double total = 0.0;
    for (const auto& sec : condensate_sectors(n_min, n_max)) {
        const double jj = 0.5 * sec.n_total;
        double f = 0.0;
        for (int row = 0; row + 1 < sec.probs.size(); ++row) {
            const double pa = sec.probs[row], pb = sec.probs[row + 1];
            if (pa + pb <= 1e-12) continue;
            const double m_lower = jj - row - 1;  // <M+1|Jy|M> couples rows (row, row+1)
            const double element_sq = (jj - m_lower) * (jj + m_lower + 1) / 4.0;
            f += 4.0 * (pa - pb) * (pa - pb) / (pa + pb) * element_sq;
        }
        total += sec.weight * f;
    }
    return total;
}

}  // namespace spinmet
