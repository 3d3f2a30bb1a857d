#include "spinmet/report.hpp"

#include <cstdlib>
#include <ctime>
#include <sstream>

#include <nlohmann/json.hpp>

namespace spinmet {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

std::string iso8601_utc(std::time_t t) {
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string timestamp() {
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        return iso8601_utc(static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10)));
    return iso8601_utc(std::time(nullptr));
}

}  // namespace

MetricReport compute_metrics(const ParsedState& state) {
    MetricReport report;
    report.n_particles = state.n_particles();
    if (state.is_sectored()) {
        const auto jz_for = [](SpinQuantum j) { return jz_generator(j); };
        report.qfi = sectored_qfi(*state.sectored, jz_for);
        double susc = 0.0;
        for (const auto& sector : state.sectored->sectors)
            susc += sector.weight * dynamical_susceptibility(sector.state);
        report.susceptibility = susc;
        // QMI and squeezing are fixed-N constructions; left unset for mixtures
        // over particle number.
    } else {
        const DensityMatrix& rho = *state.density;
        report.qfi = qfi_unitary(rho, jz_generator(rho.j()));
        report.susceptibility = dynamical_susceptibility(rho);
        report.xi_squared = spin_squeezing(rho);
        report.qmi = qmi(rho, build_tensor_basis(rho.j()));
    }
    const double n = report.n_particles;
    report.snl = n;       // per-party spectrum gap 1 for two-mode bosonic qubits
    report.hl = n * n;
    report.entangled = report.qfi > n + 1e-9;
    report.check();
    return report;
}

json report_shell(const json& input_echo) {
    json report;
    report["format_version"] = kReportFormatVersion;
    report["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    report["timestamp"] = timestamp();
    report["input"] = input_echo;
    return report;
}

json metrics_to_json(const MetricReport& metrics) {
    json out;
    out["n_particles"] = metrics.n_particles;
    out["qfi"] = metrics.qfi;
    out["susceptibility"] = metrics.susceptibility;
    out["snl"] = metrics.snl;
    out["hl"] = metrics.hl;
    out["xi_squared"] = metrics.xi_squared ? json(*metrics.xi_squared) : json(nullptr);
    out["qmi"] = metrics.qmi ? json(*metrics.qmi) : json(nullptr);
    out["entangled"] = metrics.entangled;
    return out;
}

json decomposition_to_json(const TensorDecomposition& dec) {
    json coeffs = json::array();
    for (int j = 0; j < static_cast<int>(dec.coefficients.size()); ++j)
        for (int m = j; m >= -j; --m)
            coeffs.push_back({{"j", j}, {"m", m}, {"tau", complex_to_json(dec.coeff(j, m))}});
    json out;
    out["coefficients"] = std::move(coeffs);
    // tau_00 over sqrt(2J+1): the weight of the identity matrix itself
    out["identity_coefficient"] =
        (dec.coeff(0, 0) / std::sqrt(double(dec.j_system.dim()))).real();
    return out;
}

json mass_to_json(const MassDistribution& mass) {
    json spheres = json::array();
    for (int j = 0; j < static_cast<int>(mass.spheres.size()); ++j) {
        json entries = json::array();
        for (int k = 0; k < mass.spheres[j].size(); ++k) entries.push_back(mass.spheres[j][k]);
        spheres.push_back({{"j", j}, {"mass", std::move(entries)}, {"total", mass.total_mass[j]}});
    }
    return {{"spheres", std::move(spheres)}, {"qmi", mass.qmi()}};
}

std::string mass_to_csv(const MassDistribution& mass) {
    std::ostringstream out;
    out.precision(17);
    out << "sphere_j,m,mass\n";
    for (int j = static_cast<int>(mass.spheres.size()) - 1; j >= 0; --j)
        for (int m = j; m >= -j; --m) out << j << "," << m << "," << mass.spheres[j][j - m] << "\n";
    return out.str();
}

json innate_to_json(const InnateResult& result, int grid_points, double refine_tol) {
    const EulerAngles euler = result.optimal_rotation.angles.canonical();
    json out;
    out["value"] = result.value;
    out["optimal_axis"] =
        json::array({result.optimal_axis.x(), result.optimal_axis.y(), result.optimal_axis.z()});
    out["optimal_rotation_euler_zyz"] = json::array({euler.alpha, euler.beta, euler.gamma});
    out["degenerate_maximum"] = result.degenerate_maximum;
    out["grid_points"] = grid_points;
    out["refine_tol"] = refine_tol;
    return out;
}

json trial_stats_to_json(const TrialStats& stats, const ExperimentConfig& config) {
    const auto estimator = [](const EstimatorStats& e) {
        json out;
        out["mean"] = e.mean;
        out["variance"] = e.variance ? json(*e.variance) : json(nullptr);
        return out;
    };
    json out;
    out["theta"] = config.true_theta;
    out["shots_per_trial"] = config.shots_per_trial;
    out["trials"] = config.trials;
    out["seed"] = config.master_seed;
    out["mle"] = estimator(stats.mle);
    out["moment"] = stats.moment ? estimator(*stats.moment) : json(nullptr);
    out["crlb"] = stats.crlb;
    out["cfi_bound"] = stats.cfi_bound;
    out["error_propagation_prediction"] =
        stats.error_propagation_prediction ? json(*stats.error_propagation_prediction)
                                           : json(nullptr);
    out["degenerate_trials"] = stats.degenerate_trials;
    out["rng"] = stats.rng_description;
    return out;
}

}  // namespace spinmet
