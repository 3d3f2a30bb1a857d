#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "spinmet/metrology.hpp"

namespace spinmet {

struct ExperimentConfig {
    DensityMatrix probe;
    InterferometerSpec interferometer;
    double true_theta = 0.0;
    int shots_per_trial = 1;  // nu
    int trials = 1;
    std::uint64_t master_seed = 0;

    void validate() const;
};

// One trial's sampled population-imbalance outcomes, kept as a histogram over
// the Dicke rows (outcome M = J - row).
struct MeasurementRecord {
    SpinQuantum j;
    Eigen::VectorXi counts;

    int shots() const { return counts.sum(); }
    double outcome_mean() const;  // sample mean of M
};

// p(M | theta) of the Jz measurement after the interferometer.
Eigen::VectorXd outcome_distribution(const DensityMatrix& probe, const InterferometerSpec& spec,
                                     double theta);

// nu independent draws via inverse-CDF over mt19937_64; deterministic per seed.
MeasurementRecord sample(const Eigen::VectorXd& dist, SpinQuantum j, int nu, std::uint64_t seed);

struct MleResult {
    double estimate;
    bool degenerate;  // flat or multi-modal likelihood; midpoint policy applied
};

// Maximum-likelihood estimate of theta on [lo, hi]: coarse scan plus
// golden-section refinement around the best bracket.
MleResult mle_estimate(const MeasurementRecord& record, const DensityMatrix& probe,
                       const InterferometerSpec& spec, double lo, double hi);

struct MomentResult {
    double estimate;
    double predicted_variance;  // error propagation at the operating point
};

// Inverts the fringe f(theta) = <Jz>_out around the operating point; rejects
// operating points where |f'| vanishes.
MomentResult moment_estimate(const MeasurementRecord& record, const DensityMatrix& probe,
                             const InterferometerSpec& spec, double theta_ref);

struct EstimatorStats {
    double mean = 0.0;
    std::optional<double> variance;  // empty when trials < 2
};

struct TrialStats {
    EstimatorStats mle;
    std::optional<EstimatorStats> moment;  // empty at non-invertible operating points
    double crlb = 0.0;       // 1 / (nu F_Q)
    double cfi_bound = 0.0;  // 1 / (nu F_cl) for the Jz measurement
    std::optional<double> error_propagation_prediction;
    int degenerate_trials = 0;
    std::string rng_description;
};

TrialStats run_experiment(const ExperimentConfig& config);

// Deterministic per-trial substream seeds.
std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index);

}  // namespace spinmet
