#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "spinmet/estimation.hpp"
#include "spinmet/states.hpp"

namespace spinmet {

// A state parsed from the JSON state-spec format.  Single-sector states land
// in `density` (pure inputs are densified); number-fluctuating mixtures land
// in `sectored`.
struct ParsedState {
    std::string kind;
    std::optional<DensityMatrix> density;
    std::optional<SectoredState> sectored;

    bool is_sectored() const { return sectored.has_value(); }
    // Mean total particle number (exact for fixed-N states).
    double n_particles() const;
};

ParsedState parse_state_spec(const std::string& text);
ParsedState parse_state_json(const nlohmann::json& spec);

// Interferometer block: {"preset": "mach_zehnder"} or explicit
// {"pre": [[axis, angle], ...], "axis": [nx,ny,nz], "post": [...]} where axis
// is "x" | "y" | "z" or a unit 3-vector and rotations apply in listed order.
InterferometerSpec parse_interferometer(const nlohmann::json& block, SpinQuantum j);

// Full experiment config: probe, interferometer, theta, shots, trials, seed.
ExperimentConfig parse_experiment_config(const std::string& text);

}  // namespace spinmet
