#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinmet/states.hpp"

namespace spinmet {

// Hermitian phase-imprint generator.
struct Generator {
    Matrix matrix;
    std::string label;

    Generator(Matrix m, std::string lbl);
};

Generator jz_generator(SpinQuantum j);
Generator axis_generator(SpinQuantum j, const Vec3& axis);

// Positive operator-valued measure: PSD effects summing to the identity.
struct Povm {
    std::vector<Matrix> effects;

    explicit Povm(std::vector<Matrix> effects_in);
};

Povm jz_projective_povm(SpinQuantum j);

// Interferometric sequence U_post . U_axis e^{-i theta Jz} U_axis^dag . U_pre
// with theta left free.  U_axis carries the phase-imprint axis (it maps z onto
// the physical rotation axis).
struct InterferometerSpec {
    Rotation pre;    // applied first
    Rotation axis;
    Rotation post;   // applied last

    InterferometerSpec(Rotation pre_in, Rotation axis_in, Rotation post_in);

    SpinQuantum j() const { return pre.j; }
    Matrix unitary_at(double theta) const;
    // The generator seen at the input, U_pre^dag (U_axis Jz U_axis^dag) U_pre;
    // the post rotation cannot affect any estimation quantity.
    Matrix input_generator() const;
};

// The standard Mach-Zehnder sequence e^{i pi/2 Jx} e^{-i theta Jz} e^{-i pi/2 Jx}.
InterferometerSpec mach_zehnder(SpinQuantum j);
InterferometerSpec trivial_interferometer(SpinQuantum j);

// Headline metrics for one state, assembled by the CLI layer.
struct MetricReport {
    double n_particles = 0.0;  // mean total N for sectored states
    double qfi = 0.0;              // eigendecomposition route
    double susceptibility = 0.0;   // variance-minus-coherence route; equal to qfi
    double snl = 0.0;
    double hl = 0.0;
    std::optional<double> xi_squared;
    std::optional<double> qmi;
    bool entangled = false;

    void check() const;  // 0 <= qfi <= hl + 1e-6
};

// QFI of rho under e^{-i theta G}: 2 sum_{i!=j} (p_i-p_j)^2/(p_i+p_j) |<i|G|j>|^2,
// skipping pairs with p_i + p_j below 1e-12 * tr(rho).
double qfi_unitary(const Matrix& rho, const Matrix& generator);
double qfi_unitary(const DensityMatrix& rho, const Generator& g);

// Same quantity through the other algebraic route,
// 4 sum_i p_i <D2 Jz>_i - 8 sum_{i!=j} p_i p_j/(p_i+p_j) |<i|Jz|j>|^2.
double dynamical_susceptibility(const DensityMatrix& rho);

// QFI from three points of a state path, central-difference derivative in the
// eigenbasis of the middle state. Includes the diagonal (classical) terms.
double qfi_path(const DensityMatrix& at_minus, const DensityMatrix& at_center,
                const DensityMatrix& at_plus, double delta);

// Theta-independent QFI of the interferometric estimation task.
double qfi_interferometer(const DensityMatrix& rho, const InterferometerSpec& spec);

// Classical Fisher information of the POVM, sum_xi (d_theta p)^2 / p with
// central differences; the denominator uses the midpoint probabilities.
double cfi(const Povm& povm, const DensityMatrix& at_minus, const DensityMatrix& at_plus,
           double delta);

// Bures distance, d^2 = 2 [1 - tr sqrt(sqrt(rho1) rho2 sqrt(rho1))].
double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

// xi^2 = N <D2 Jz> / <Jx>^2; empty when the mean spin projection vanishes.
std::optional<double> spin_squeezing(const DensityMatrix& rho);

// Generalized squeezing along `axis`, with the mean spin projected onto the
// plane orthogonal to it.
std::optional<double> spin_squeezing_general(const DensityMatrix& rho, const Vec3& axis);

struct ScalingBounds {
    double snl;  // N (lmax - lmin)^2
    double hl;   // N^2 (lmax - lmin)^2
};

// Separable and ultimate bounds from the single-party generator spectrum.
ScalingBounds bounds(int n_particles, const Generator& single_party);

// Weighted per-sector QFI; valid because N-conserving generators carry no
// cross-sector matrix elements.
double sectored_qfi(const SectoredState& state,
                    const std::function<Generator(SpinQuantum)>& generator_for_sector);

double expectation(const Matrix& rho, const Matrix& op);
double variance(const Matrix& rho, const Matrix& op);

}  // namespace spinmet
