#pragma once

#include <vector>

#include "spinmet/states.hpp"

namespace spinmet {

// Brute-force 2^N tensor-product machinery used to cross-check the symmetric
// subspace library.  Qubit k is up when bit k of the basis index is set.
// Dense linear algebra throughout, so N is capped at 10 (dim 1024).

inline constexpr int kMaxOracleQubits = 10;

struct MultiQubitState {
    int n_qubits;
    Vector amplitudes;  // dim 2^N, unit norm
};

// Collective spin component, sum over sites of the embedded Pauli/2.
Matrix collective_operator(int n_qubits, char axis);

struct JSector {
    int two_j;
    Matrix projector;
    int multiplicity;  // number of copies d_J of the spin-J representation
};

// Total angular momentum decomposition from the spectrum of J^2.
struct JSectorDecomposition {
    int n_qubits;
    std::vector<JSector> sectors;  // descending J

    // P_J = tr(Pi_J rho) for each sector.
    std::vector<double> weights(const Matrix& rho) const;
    std::vector<double> weights(const MultiQubitState& psi) const;
};

JSectorDecomposition j_sector_decomposition(int n_qubits);

// |J,M; nu=1> built from a symmetrized block of 2J qubits padded with singlet
// pairs; defined for even N.
MultiQubitState singlet_eigenstate(int n_qubits, int two_j, int two_m);

// Isometric embedding of a spin-N/2 Dicke-basis vector into the symmetric
// subspace of N qubits.
MultiQubitState symmetrize_embed(const PureState& psi);

// 4 sum_J P_J J^2, the symmetry bound on the dynamical susceptibility.
double pj_bound(const JSectorDecomposition& dec, const Matrix& rho);
double pj_bound(const JSectorDecomposition& dec, const MultiQubitState& psi);

}  // namespace spinmet
