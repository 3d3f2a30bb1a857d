#include "spinmet/estimation.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace spinmet {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogFloor = -745.0;  // log of the smallest normal double, near enough

double log_likelihood(const Eigen::VectorXi& counts, const Eigen::VectorXd& probs) {
    double total = 0.0;
    for (Eigen::Index r = 0; r < counts.size(); ++r) {
        if (counts[r] == 0) continue;
        total += counts[r] * (probs[r] > 0.0 ? std::log(probs[r]) : kLogFloor);
    }
    return total;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (shots_per_trial < 1) throw InputError("ExperimentConfig: need at least one shot per trial");
    if (trials < 1) throw InputError("ExperimentConfig: need at least one trial");
    if (probe.dim() != interferometer.j().dim())
        throw InputError("ExperimentConfig: probe and interferometer dimensions differ");
}

double MeasurementRecord::outcome_mean() const {
    double total = 0.0;
    for (Eigen::Index r = 0; r < counts.size(); ++r) total += counts[r] * j.m_of_row(int(r));
    return total / shots();
}

Eigen::VectorXd outcome_distribution(const DensityMatrix& probe, const InterferometerSpec& spec,
                                     double theta) {
    if (probe.dim() != spec.j().dim())
        throw InputError("outcome_distribution: probe and interferometer dimensions differ");
    const Matrix u = spec.unitary_at(theta);
    const Matrix out = u * probe.rho() * u.adjoint();
    Eigen::VectorXd probs = out.diagonal().real().cwiseMax(0.0);
    probs /= probs.sum();
    return probs;
}

MeasurementRecord sample(const Eigen::VectorXd& dist, SpinQuantum j, int nu, std::uint64_t seed) {
    if (dist.size() != j.dim()) throw InputError("sample: distribution does not match 2J+1");
    if (nu < 1) throw InputError("sample: need at least one draw");
    if (std::abs(dist.sum() - 1.0) > 1e-9 || dist.minCoeff() < 0.0)
        throw InputError("sample: not a probability vector");

    Eigen::VectorXd cdf(dist.size());
    double acc = 0.0;
    for (Eigen::Index r = 0; r < dist.size(); ++r) {
        acc += dist[r];
        cdf[r] = acc;
    }
    cdf[dist.size() - 1] = 1.0;

    std::mt19937_64 rng(seed);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(dist.size());
    for (int shot = 0; shot < nu; ++shot) {
        const double u = double(rng() >> 11) * 0x1.0p-53;
        Eigen::Index r = 0;
        while (cdf[r] < u) ++r;
        ++counts[r];
    }
    return {j, std::move(counts)};
}

MleResult mle_estimate(const MeasurementRecord& record, const DensityMatrix& probe,
                       const InterferometerSpec& spec, double lo, double hi) {
    if (!(lo < hi)) throw InputError("mle_estimate: empty search interval");
    if (record.counts.size() != probe.dim())
        throw InputError("mle_estimate: record does not match the model dimension");

    constexpr int kGrid = 257;
    std::vector<double> thetas(kGrid), loglik(kGrid);
    for (int k = 0; k < kGrid; ++k) {
        thetas[k] = lo + (hi - lo) * k / (kGrid - 1);
        loglik[k] = log_likelihood(record.counts, outcome_distribution(probe, spec, thetas[k]));
    }

    int best = 0;
    for (int k = 1; k < kGrid; ++k)
        if (loglik[k] > loglik[best]) best = k;

    // Detect flat or multi-modal likelihoods: collect grid maximizers and
    // check whether they form one contiguous bracket.
    const double cut = loglik[best] - 1e-9 * (1.0 + std::abs(loglik[best]));
    int first = best, last = best;
    bool contiguous = true;
    for (int k = 0; k < kGrid; ++k) {
        if (loglik[k] >= cut) {
            first = std::min(first, k);
            last = std::max(last, k);
        }
    }
    for (int k = first; k <= last; ++k)
        if (loglik[k] < cut) contiguous = false;
    if (!contiguous || last - first > 2)
        return {(thetas[first] + thetas[last]) / 2.0, true};

    double a = thetas[std::max(best - 1, 0)];
    double b = thetas[std::min(best + 1, kGrid - 1)];
    const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_golden * (b - a), x2 = a + inv_golden * (b - a);
    double f1 = log_likelihood(record.counts, outcome_distribution(probe, spec, x1));
    double f2 = log_likelihood(record.counts, outcome_distribution(probe, spec, x2));
    for (int iter = 0; iter < 80 && (b - a) > 1e-12; ++iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_golden * (b - a);
            f2 = log_likelihood(record.counts, outcome_distribution(probe, spec, x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_golden * (b - a);
            f1 = log_likelihood(record.counts, outcome_distribution(probe, spec, x1));
        }
    }
    return {(a + b) / 2.0, false};
}

namespace {

double fringe_mean(const DensityMatrix& probe, const InterferometerSpec& spec, double theta) {
    const Eigen::VectorXd probs = outcome_distribution(probe, spec, theta);
    double mean = 0.0;
    for (Eigen::Index r = 0; r < probs.size(); ++r) mean += probs[r] * probe.j().m_of_row(int(r));
    return mean;
}

double fringe_variance(const DensityMatrix& probe, const InterferometerSpec& spec, double theta) {
    const Eigen::VectorXd probs = outcome_distribution(probe, spec, theta);
    double mean = 0.0, second = 0.0;
    for (Eigen::Index r = 0; r < probs.size(); ++r) {
        const double m = probe.j().m_of_row(int(r));
        mean += probs[r] * m;
        second += probs[r] * m * m;
    }
    return second - mean * mean;
}

double fringe_slope(const DensityMatrix& probe, const InterferometerSpec& spec, double theta) {
    constexpr double kStep = 1e-5;
    return (fringe_mean(probe, spec, theta + kStep) - fringe_mean(probe, spec, theta - kStep))
         / (2.0 * kStep);
}

bool slope_invertible(const DensityMatrix& probe, const InterferometerSpec& spec, double theta) {
    const double scale = 0.5 * probe.j().two_j();
    return std::abs(fringe_slope(probe, spec, theta)) >= 1e-8 * std::max(1.0, scale);
}

}  // namespace

MomentResult moment_estimate(const MeasurementRecord& record, const DensityMatrix& probe,
                             const InterferometerSpec& spec, double theta_ref) {
    constexpr double kStep = 1e-5;
    const double slope = fringe_slope(probe, spec, theta_ref);
    const double scale = 0.5 * probe.j().two_j();  // |<Jz>| <= J
    if (std::abs(slope) < 1e-8 * std::max(1.0, scale))
        throw InputError("moment_estimate: fringe slope vanishes at the operating point");

    const double target = record.outcome_mean();
    double theta = theta_ref;
    for (int iter = 0; iter < 60; ++iter) {
        const double residual = fringe_mean(probe, spec, theta) - target;
        const double local_slope =
            (fringe_mean(probe, spec, theta + kStep) - fringe_mean(probe, spec, theta - kStep))
            / (2.0 * kStep);
        if (std::abs(local_slope) < 1e-12) break;
        const double next = theta - residual / local_slope;
        if (std::abs(next - theta) < 1e-13) {
            theta = next;
            break;
        }
        theta = next;
    }

    const double predicted =
        fringe_variance(probe, spec, theta_ref) / (record.shots() * slope * slope);
    return {theta, predicted};
}

std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index) {
    // splitmix64 output function on the (index+1)-th stream state
    std::uint64_t z = master_seed + (std::uint64_t(trial_index) + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

TrialStats run_experiment(const ExperimentConfig& config) {
    config.validate();

    const Eigen::VectorXd dist =
        outcome_distribution(config.probe, config.interferometer, config.true_theta);

    const bool moment_defined =
        slope_invertible(config.probe, config.interferometer, config.true_theta);

    std::vector<double> mle_samples, moment_samples;
    mle_samples.reserve(config.trials);
    int degenerate = 0;
    std::optional<double> prediction;

    const double lo = config.true_theta - kPi / 2.0;
    const double hi = config.true_theta + kPi / 2.0;

    for (int trial = 0; trial < config.trials; ++trial) {
        const MeasurementRecord record = sample(dist, config.probe.j(), config.shots_per_trial,
                                                trial_seed(config.master_seed, trial));
        const MleResult mle = mle_estimate(record, config.probe, config.interferometer, lo, hi);
        if (mle.degenerate) ++degenerate;
        mle_samples.push_back(mle.estimate);
        if (moment_defined) {
            const MomentResult mom =
                moment_estimate(record, config.probe, config.interferometer, config.true_theta);
            moment_samples.push_back(mom.estimate);
            prediction = mom.predicted_variance;
        }
    }

    const auto summarize = [](const std::vector<double>& xs) {
        EstimatorStats stats;
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= xs.size();
        stats.mean = mean;
        if (xs.size() >= 2) {
            double ss = 0.0;
            for (double x : xs) ss += (x - mean) * (x - mean);
            stats.variance = ss / (xs.size() - 1);
        }
        return stats;
    };

    TrialStats stats;
    stats.mle = summarize(mle_samples);
    if (moment_defined) stats.moment = summarize(moment_samples);
    stats.error_propagation_prediction = prediction;
    stats.degenerate_trials = degenerate;

    const double fq = qfi_interferometer(config.probe, config.interferometer);
    stats.crlb = 1.0 / (config.shots_per_trial * fq);
    constexpr double kDelta = 1e-4;
    const Matrix u_minus = config.interferometer.unitary_at(config.true_theta - kDelta);
    const Matrix u_plus = config.interferometer.unitary_at(config.true_theta + kDelta);
    const auto evolve = [&](const Matrix& u) {
        Matrix out = u * config.probe.rho() * u.adjoint();
        out = (out + out.adjoint()) / 2.0;
        out /= out.trace().real();
        return DensityMatrix(config.probe.j(), std::move(out));
    };
    const double f_cl = cfi(jz_projective_povm(config.probe.j()), evolve(u_minus),
                            evolve(u_plus), kDelta);
    stats.cfi_bound = f_cl > 0.0 ? 1.0 / (config.shots_per_trial * f_cl) : 0.0;
    stats.rng_description = "mt19937_64 inverse-CDF; per-trial seeds via splitmix64(master, index)";
    return stats;
}

}  // namespace spinmet
