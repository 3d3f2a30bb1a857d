#pragma once

#include <vector>

#include "spinmet/metrology.hpp"

namespace spinmet {

// Result of maximizing the dynamical susceptibility over global rotations.
struct InnateResult {
    double value = 0.0;
    Rotation optimal_rotation;   // R with F(R rho R^dag) = value
    Vec3 optimal_axis;           // n with value = QFI(rho, n.J)
    bool degenerate_maximum = false;  // several grid optima tied within tolerance

    struct TracePoint {
        double theta, phi, value;
    };
    std::vector<TracePoint> grid_trace;
};

// Coarse scan of phase-imprint axes over the half-sphere (a Fibonacci lattice
// seeded with the coordinate axes; antipodal axes are equivalent and the
// residual z-rotation commutes with the generator), followed by a Nelder-Mead
// refinement in (theta, phi).  Deterministic for fixed inputs.
InnateResult innate_entanglement(const DensityMatrix& rho, int grid_points = 400,
                                 double refine_tol = 1e-8);

// Interferometric sequence whose estimation QFI equals the innate value:
// the pre rotation transports the optimal axis onto z.
InterferometerSpec mz_design_from_innate(const InnateResult& result);

// Principal-axis diagnostic: the susceptibility is the quadratic form
// n^T Q n in the axis, so the top eigenpair of Q independently locates the
// optimum.  Kept as a cross-check for the search, not a replacement.
struct AxisQuadraticForm {
    Eigen::Matrix3d form;
    double top_value;
    Vec3 top_axis;
};

AxisQuadraticForm axis_quadratic_form(const DensityMatrix& rho);

}  // namespace spinmet
