#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "spinmet/innate.hpp"
#include "spinmet/state_spec.hpp"
#include "spinmet/tensors.hpp"

namespace spinmet {

inline constexpr const char* kToolName = "spinmet";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

// Headline metrics for any parsed state.  Sectored states get sector-additive
// QFI quantities and bounds against the mean total N; tensor-based fields stay
// unset for them (they are fixed-N constructions).
MetricReport compute_metrics(const ParsedState& state);

// Report skeleton: format version, tool stamp, timestamp, input echo.
// The timestamp honors SOURCE_DATE_EPOCH so pinned runs are byte-stable.
nlohmann::json report_shell(const nlohmann::json& input_echo);

nlohmann::json metrics_to_json(const MetricReport& metrics);
nlohmann::json decomposition_to_json(const TensorDecomposition& dec);
nlohmann::json mass_to_json(const MassDistribution& mass);
std::string mass_to_csv(const MassDistribution& mass);
nlohmann::json innate_to_json(const InnateResult& result, int grid_points, double refine_tol);
nlohmann::json trial_stats_to_json(const TrialStats& stats, const ExperimentConfig& config);

}  // namespace spinmet
