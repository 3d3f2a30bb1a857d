#include "spinmet/metrology.hpp"

#include <cmath>

namespace spinmet {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNullSpaceEps = 1e-12;  // relative to tr(rho) = 1

// Eigenvalues and the generator expressed in the eigenbasis.
struct SpectralView {
    Eigen::VectorXd probs;
    Matrix g_eig;
};

SpectralView spectral_view(const Matrix& rho, const Matrix& g, bool diagonal_hint) {
    if (diagonal_hint) return {rho.diagonal().real(), g};
    const HermEig eig = eig_hermitian(rho);
    return {eig.values, Matrix(eig.vectors.adjoint() * g * eig.vectors)};
}

bool exactly_diagonal(const Matrix& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (r != c && m(r, c) != Complex(0.0, 0.0)) return false;
    return true;
}

double qfi_from_view(const SpectralView& view) {
    const Eigen::Index dim = view.probs.size();
    double total = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index k = i + 1; k < dim; ++k) {
            const double sum = view.probs[i] + view.probs[k];
            if (sum <= kNullSpaceEps) continue;
            const double diff = view.probs[i] - view.probs[k];
            total += 4.0 * diff * diff / sum * std::norm(view.g_eig(i, k));
        }
    }
    return total;
}

}  // namespace

Generator::Generator(Matrix m, std::string lbl) : matrix(std::move(m)), label(std::move(lbl)) {
    require_hermitian(matrix, 1e-12, "Generator");
}

Generator jz_generator(SpinQuantum j) {
    return Generator(spin_operators(j).jz, "Jz");
}

Generator axis_generator(SpinQuantum j, const Vec3& axis) {
    if (std::abs(axis.norm() - 1.0) > 1e-9)
        throw InputError("axis_generator: axis must be a unit vector");
    return Generator(spin_operators(j).along(axis), "n.J");
}

Povm::Povm(std::vector<Matrix> effects_in) : effects(std::move(effects_in)) {
    if (effects.empty()) throw InputError("Povm: no effects");
    const Eigen::Index dim = effects.front().rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const Matrix& e : effects) {
        require_hermitian(e, 1e-10, "Povm effect");
        if (e.rows() != dim) throw InputError("Povm: effects have mixed dimensions");
        if (eig_hermitian(e).values.minCoeff() < -1e-10)
            throw InputError("Povm: effect is not positive semidefinite");
        sum += e;
    }
    if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
        throw InputError("Povm: effects do not sum to the identity");
}

Povm jz_projective_povm(SpinQuantum j) {
    std::vector<Matrix> effects;
    effects.reserve(j.dim());
    for (int row = 0; row < j.dim(); ++row) {
        Matrix e = Matrix::Zero(j.dim(), j.dim());
        e(row, row) = 1.0;
        effects.push_back(std::move(e));
    }
    return Povm(std::move(effects));
}

InterferometerSpec::InterferometerSpec(Rotation pre_in, Rotation axis_in, Rotation post_in)
    : pre(std::move(pre_in)), axis(std::move(axis_in)), post(std::move(post_in)) {
    if (!(pre.j == axis.j) || !(pre.j == post.j))
        throw InputError("InterferometerSpec: rotations act on different dimensions");
}

Matrix InterferometerSpec::unitary_at(double theta) const {
    Vector phases(j().dim());
    for (int row = 0; row < j().dim(); ++row)
        phases[row] = std::exp(Complex(0.0, -theta * j().m_of_row(row)));
    return post.unitary * axis.unitary * Matrix(phases.asDiagonal()) * axis.unitary.adjoint()
         * pre.unitary;
}

Matrix InterferometerSpec::input_generator() const {
    const Matrix jz = spin_operators(j()).jz;
    Matrix g = pre.unitary.adjoint() * axis.unitary * jz * axis.unitary.adjoint() * pre.unitary;
    return (g + g.adjoint()) / 2.0;
}

InterferometerSpec mach_zehnder(SpinQuantum j) {
    // Splitter pair oriented so the output fringe follows
    // <Jz>_out = cos(theta) <Jz>_in + sin(theta) <Jx>_in.
    return InterferometerSpec(rotation_about_axis(j, Vec3::UnitX(), -kPi / 2.0),
                              rotation_about_axis(j, Vec3::UnitZ(), 0.0),
                              rotation_about_axis(j, Vec3::UnitX(), kPi / 2.0));
}

InterferometerSpec trivial_interferometer(SpinQuantum j) {
    const Rotation id = rotation_about_axis(j, Vec3::UnitZ(), 0.0);
    return InterferometerSpec(id, id, id);
}

void MetricReport::check() const {
    if (qfi < -1e-9 || qfi > hl + 1e-6)
        throw NumericalError("MetricReport: QFI " + std::to_string(qfi)
                             + " escapes [0, HL] for N = " + std::to_string(n_particles));
}

double qfi_unitary(const Matrix& rho, const Matrix& generator) {
    if (rho.rows() != generator.rows())
        throw InputError("qfi_unitary: state and generator dimensions differ");
    return qfi_from_view(spectral_view(rho, generator, exactly_diagonal(rho)));
}

double qfi_unitary(const DensityMatrix& rho, const Generator& g) {
    if (rho.dim() != g.matrix.rows())
        throw InputError("qfi_unitary: state and generator dimensions differ");
    return qfi_from_view(spectral_view(rho.rho(), g.matrix, rho.is_diagonal()));
}

double dynamical_susceptibility(const DensityMatrix& rho) {
    const Matrix jz = spin_operators(rho.j()).jz;
    const SpectralView view = spectral_view(rho.rho(), jz, rho.is_diagonal());
    const Matrix jz_sq = view.g_eig * view.g_eig;
    const Eigen::Index dim = view.probs.size();
    double total = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double var =
            jz_sq(i, i).real() - view.g_eig(i, i).real() * view.g_eig(i, i).real();
        total += 4.0 * view.probs[i] * var;
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            if (i == k) continue;
            const double sum = view.probs[i] + view.probs[k];
            if (sum <= kNullSpaceEps) continue;
            total -= 8.0 * view.probs[i] * view.probs[k] / sum * std::norm(view.g_eig(i, k));
        }
    }
    return total;
}

double qfi_path(const DensityMatrix& at_minus, const DensityMatrix& at_center,
                const DensityMatrix& at_plus, double delta) {
    if (delta <= 0.0) throw InputError("qfi_path: step must be positive");
    if (at_minus.dim() != at_center.dim() || at_plus.dim() != at_center.dim())
        throw InputError("qfi_path: state dimensions differ");
    const Matrix drho = (at_plus.rho() - at_minus.rho()) / (2.0 * delta);
    const HermEig eig = eig_hermitian(at_center.rho());
    const Matrix d_eig = eig.vectors.adjoint() * drho * eig.vectors;
    double total = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
            const double sum = eig.values[i] + eig.values[k];
            if (sum <= kNullSpaceEps) continue;
            total += 2.0 * std::norm(d_eig(i, k)) / sum;
        }
    }
    return total;
}

double qfi_interferometer(const DensityMatrix& rho, const InterferometerSpec& spec) {
    if (rho.dim() != spec.j().dim())
        throw InputError("qfi_interferometer: state and interferometer dimensions differ");
    return qfi_unitary(rho.rho(), spec.input_generator());
}

double cfi(const Povm& povm, const DensityMatrix& at_minus, const DensityMatrix& at_plus,
           double delta) {
    if (delta <= 0.0) throw InputError("cfi: step must be positive");
    double total = 0.0;
    for (const Matrix& effect : povm.effects) {
        const double p_minus = expectation(at_minus.rho(), effect);
        const double p_plus = expectation(at_plus.rho(), effect);
        const double p_mid = (p_minus + p_plus) / 2.0;
        if (p_mid <= kNullSpaceEps) continue;
        const double dp = (p_plus - p_minus) / (2.0 * delta);
        total += dp * dp / p_mid;
    }
    return total;
}

double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim())
        throw InputError("bures_distance: state dimensions differ");
    const Matrix root = sqrt_psd(rho1.rho());
    const Matrix inner = root * rho2.rho() * root;
    const HermEig eig = eig_hermitian((inner + inner.adjoint()) / 2.0);
    double fidelity = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        fidelity += std::sqrt(std::max(eig.values[i], 0.0));
    return std::sqrt(std::max(2.0 * (1.0 - fidelity), 0.0));
}

std::optional<double> spin_squeezing(const DensityMatrix& rho) {
    const SpinOps ops = spin_operators(rho.j());
    const double n_particles = rho.j().two_j();
    const double mean_x = expectation(rho.rho(), ops.jx);
    if (mean_x * mean_x < 1e-10 * n_particles) return std::nullopt;
    return n_particles * variance(rho.rho(), ops.jz) / (mean_x * mean_x);
}

std::optional<double> spin_squeezing_general(const DensityMatrix& rho, const Vec3& axis) {
    if (std::abs(axis.norm() - 1.0) > 1e-9)
        throw InputError("spin_squeezing_general: axis must be a unit vector");
    const SpinOps ops = spin_operators(rho.j());
    const double n_particles = rho.j().two_j();
    const Vec3 mean_spin(expectation(rho.rho(), ops.jx), expectation(rho.rho(), ops.jy),
                         expectation(rho.rho(), ops.jz));
    const Vec3 perp = mean_spin - mean_spin.dot(axis) * axis;
    if (perp.squaredNorm() < 1e-10 * n_particles) return std::nullopt;
    return n_particles * variance(rho.rho(), ops.along(axis)) / perp.squaredNorm();
}

ScalingBounds bounds(int n_particles, const Generator& single_party) {
    if (n_particles < 1) throw InputError("bounds: need at least one particle");
    const Eigen::VectorXd spectrum = eig_hermitian(single_party.matrix).values;
    const double gap = spectrum.maxCoeff() - spectrum.minCoeff();
    return {n_particles * gap * gap, double(n_particles) * n_particles * gap * gap};
}

double sectored_qfi(const SectoredState& state,
                    const std::function<Generator(SpinQuantum)>& generator_for_sector) {
    state.validate();
    double total = 0.0;
    for (const auto& sector : state.sectors) {
        if (sector.weight == 0.0) continue;
        const Generator g = generator_for_sector(sector.state.j());
        if (g.matrix.rows() != sector.state.dim())
            throw InputError("sectored_qfi: generator does not stay within the sector");
        total += sector.weight * qfi_unitary(sector.state, g);
    }
    return total;
}

double expectation(const Matrix& rho, const Matrix& op) {
    return (rho * op).trace().real();
}

double variance(const Matrix& rho, const Matrix& op) {
    const double mean = expectation(rho, op);
    return expectation(rho, op * op) - mean * mean;
}

}  // namespace spinmet
