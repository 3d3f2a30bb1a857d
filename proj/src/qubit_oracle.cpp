#include "spinmet/qubit_oracle.hpp"

#include <bit>
#include <cmath>
#include <map>

namespace spinmet {
namespace {

void require_qubit_count(int n_qubits) {
    if (n_qubits < 1) throw InputError("qubit oracle: need at least one qubit");
    if (n_qubits > kMaxOracleQubits)
        throw InputError("qubit oracle: dense cross-checks are capped at N = 10");
}

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

Matrix collective_operator(int n_qubits, char axis) {
    require_qubit_count(n_qubits);
    const int dim = 1 << n_qubits;
    Matrix op = Matrix::Zero(dim, dim);
    for (int basis = 0; basis < dim; ++basis) {
        for (int site = 0; site < n_qubits; ++site) {
            const bool up = (basis >> site) & 1;
            switch (axis) {
                case 'z':
                    op(basis, basis) += up ? 0.5 : -0.5;
                    break;
                case 'x':
                    op(basis ^ (1 << site), basis) += 0.5;
                    break;
                case 'y':
                    // sigma_y flips the site: |up> -> i|down>, |down> -> -i|up>
                    op(basis ^ (1 << site), basis) += up ? Complex(0.0, 0.5) : Complex(0.0, -0.5);
                    break;
                default:
                    throw InputError("collective_operator: axis must be x, y or z");
            }
        }
    }
    return op;
}

JSectorDecomposition j_sector_decomposition(int n_qubits) {
    require_qubit_count(n_qubits);
    const Matrix jx = collective_operator(n_qubits, 'x');
    const Matrix jy = collective_operator(n_qubits, 'y');
    const Matrix jz = collective_operator(n_qubits, 'z');
    const Eigen::MatrixXd j_sq = (jx * jx + jy * jy + jz * jz).real();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(j_sq);
    if (solver.info() != Eigen::Success)
        throw NumericalError("j_sector_decomposition: eigensolver failed");

    // Eigenvalues are J(J+1) with J = N/2, N/2-1, ...; cluster with an
    // absolute tolerance, comfortable since neighboring values differ by >= 1.
    std::map<int, std::vector<int>> columns_by_two_j;
    for (int col = 0; col < j_sq.rows(); ++col) {
        const double lambda = solver.eigenvalues()[col];
        const double j_val = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * std::max(lambda, 0.0)));
        const int two_j = static_cast<int>(std::lround(2.0 * j_val));
        const double expected = 0.25 * two_j * (two_j + 2.0);
        if (std::abs(lambda - expected) > 1e-8)
            throw NumericalError("j_sector_decomposition: eigenvalue does not sit on a J(J+1) ladder");
        columns_by_two_j[two_j].push_back(col);
    }

    JSectorDecomposition dec{n_qubits, {}};
    for (auto it = columns_by_two_j.rbegin(); it != columns_by_two_j.rend(); ++it) {
        const auto& [two_j, cols] = *it;
        const int block = static_cast<int>(cols.size());
        if (block % (two_j + 1) != 0)
            throw NumericalError("j_sector_decomposition: sector size is not a multiple of 2J+1");
        Eigen::MatrixXd basis(j_sq.rows(), block);
        for (int k = 0; k < block; ++k) basis.col(k) = solver.eigenvectors().col(cols[k]);
        dec.sectors.push_back(
            {two_j, (basis * basis.transpose()).cast<Complex>(), block / (two_j + 1)});
    }
    return dec;
}

std::vector<double> JSectorDecomposition::weights(const Matrix& rho) const {
    std::vector<double> out;
    out.reserve(sectors.size());
    for (const auto& s : sectors) out.push_back((s.projector * rho).trace().real());
    return out;
}

std::vector<double> JSectorDecomposition::weights(const MultiQubitState& psi) const {
    std::vector<double> out;
    out.reserve(sectors.size());
    for (const auto& s : sectors)
        out.push_back((psi.amplitudes.adjoint() * s.projector * psi.amplitudes)(0).real());
    return out;
}

MultiQubitState singlet_eigenstate(int n_qubits, int two_j, int two_m) {
    require_qubit_count(n_qubits);
    if (n_qubits % 2 != 0)
        throw InputError("singlet_eigenstate: construction is defined for even N");
    if (two_j < 0 || two_j > n_qubits || two_j % 2 != 0 || std::abs(two_m) > two_j
        || two_m % 2 != 0)
        throw InputError("singlet_eigenstate: invalid (J, M)");

    const int sym_qubits = two_j;               // 2J qubits carry the symmetric block
    const int n_pairs = (n_qubits - two_j) / 2; // the rest pair into singlets
    const int ups = (two_j + two_m) / 2;        // J+M up spins in the block

    Vector state = Vector::Zero(1 << n_qubits);
    const double sym_amp = std::exp(-0.5 * log_binomial(sym_qubits, ups));
    const double pair_amp = std::pow(std::sqrt(0.5), n_pairs);

    // Enumerate symmetric-block masks with the right population times all
    // singlet sign patterns |up down> - |down up> on the trailing pairs.
    for (int mask = 0; mask < (1 << sym_qubits); ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) != ups) continue;
        for (int pattern = 0; pattern < (1 << n_pairs); ++pattern) {
            int basis = mask;
            int sign = 1;
            for (int pair = 0; pair < n_pairs; ++pair) {
                const int first = sym_qubits + 2 * pair;
                if ((pattern >> pair) & 1) {
                    basis |= 1 << (first + 1);  // |down up>, the minus branch
                    sign = -sign;
                } else {
                    basis |= 1 << first;        // |up down>
                }
            }
            state[basis] += sign * sym_amp * pair_amp;
        }
    }
    state /= state.norm();
    return {n_qubits, std::move(state)};
}

MultiQubitState symmetrize_embed(const PureState& psi) {
    const int n_qubits = psi.j().two_j();
    require_qubit_count(n_qubits);
    Vector state = Vector::Zero(1 << n_qubits);
    for (int basis = 0; basis < state.size(); ++basis) {
        const int ups = std::popcount(static_cast<unsigned>(basis));
        const int row = n_qubits - ups;  // M = ups - N/2, row = J - M
        state[basis] =
            psi.amplitude(row) * std::exp(-0.5 * log_binomial(n_qubits, ups));
    }
    return {n_qubits, std::move(state)};
}

double pj_bound(const JSectorDecomposition& dec, const Matrix& rho) {
    double bound = 0.0;
    const std::vector<double> p = dec.weights(rho);
    for (size_t k = 0; k < dec.sectors.size(); ++k) {
        const double j_val = 0.5 * dec.sectors[k].two_j;
        bound += 4.0 * p[k] * j_val * j_val;
    }
    return bound;
}

double pj_bound(const JSectorDecomposition& dec, const MultiQubitState& psi) {
    return pj_bound(dec, Matrix(psi.amplitudes * psi.amplitudes.adjoint()));
}

}  // namespace spinmet
