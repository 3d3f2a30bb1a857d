#pragma once

#include <utility>
#include <vector>

#include "spinmet/su2.hpp"

namespace spinmet {

// Pure state of a spin-J sector, unit norm to 1e-12 (enforced).
class PureState {
public:
    PureState(SpinQuantum j, Vector amplitudes);

    SpinQuantum j() const { return j_; }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex amplitude(int row) const { return amplitudes_[row]; }

    PureState rotated(const Rotation& r) const;

private:
    SpinQuantum j_;
    Vector amplitudes_;
};

// Density matrix of a spin-J sector in the Dicke basis.  Construction enforces
// Hermiticity and unit trace to 1e-12 and smallest eigenvalue >= -1e-10;
// offending inputs are rejected, never clipped.
class DensityMatrix {
public:
    DensityMatrix(SpinQuantum j, Matrix rho);
    static DensityMatrix from_pure(const PureState& psi);

    SpinQuantum j() const { return j_; }
    const Matrix& rho() const { return rho_; }
    int dim() const { return j_.dim(); }

    // True when every off-diagonal entry is exactly zero.  Diagonal states
    // (mixtures of Dicke projectors) get a cheap spectral shortcut downstream.
    bool is_diagonal() const { return diagonal_; }

    DensityMatrix rotated(const Rotation& r) const;

private:
    SpinQuantum j_;
    Matrix rho_;
    bool diagonal_;
};

// Mixture over particle-number sectors.  Sectors with distinct total N are
// kept block-wise; any N-conserving generator has no cross-sector matrix
// elements, so metrology quantities add over blocks.
struct SectoredState {
    struct Sector {
        double weight;
        DensityMatrix state;
    };
    std::vector<Sector> sectors;  // weights >= 0, summing to 1 to 1e-12

    void validate() const;
};

// |J=N/2, M> with 2M = two_m.
PureState dicke(int n_particles, int two_m);

// Product of N identical orbitals pointed along (theta, phi):
// <J,M|CSS> = sqrt(C(N, J+M)) cos^{J+M}(theta/2) (sin(theta/2) e^{i phi})^{J-M}.
PureState coherent_spin_state(int n_particles, double theta, double phi);

// (|J,J> + e^{i phi}|J,-J>)/sqrt(2).
PureState cat_state(int n_particles, double relative_phase);

// (|J,m> + |J,-m>)/sqrt(2) with 0 < m <= J; m = 0 is rejected.
PureState kitten_state(int n_particles, int two_m);

// Beam-split twin Fock, e^{i pi/2 Jx}|N/2, 0>; N must be even.
PureState twin_fock_probe(int n_particles);

// Convex combination of same-J density matrices.  Weights must be
// non-negative and sum to 1 within 1e-9 (then normalized exactly).
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& components);

// Two independently prepared condensates, each with a flat atom-number
// distribution on [n_min, n_max]; occupation pair (a, b) contributes the
// Dicke state |J=(a+b)/2, M=(a-b)/2> of its total-N sector.
SectoredState two_condensate_mixture(int n_min, int n_max);

// Mach-Zehnder susceptibility of two_condensate_mixture(n_min, n_max),
// evaluated sector-by-sector from the diagonal probabilities without
// materializing the sector matrices; scales to thousands of atoms.
double two_condensate_mz_qfi(int n_min, int n_max);

}  // namespace spinmet
