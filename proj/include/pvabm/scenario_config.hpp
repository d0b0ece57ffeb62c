#pragma once

// Scenario files: a flat YAML mapping of scalar values, one key per
// ScenarioParams field plus the input series paths. Unknown keys are errors.
//
//   total_farmers: 18000
//   discount_rate: 0.04
//   price_series: prices.csv      # relative to the scenario file
//   subsidy_series: subsidies.csv
//   target_series: target_2022.csv  # optional
//
// Keys left out keep their ScenarioParams defaults.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pvabm/calibration.hpp"
#include "pvabm/types.hpp"

namespace pvabm::io {

struct ScenarioBundle {
    ScenarioParams params;
    YearSeries prices;
    YearSeries subsidies;
    std::optional<calibration::CalibrationTarget> target;
    calibration::Loss target_loss = calibration::Loss::squared_error;
    /// Non-fatal findings, e.g. subsidies outside the study range.
    std::vector<std::string> warnings;
};

inline constexpr double kStudySubsidyMin = 1000.0;
inline constexpr double kStudySubsidyMax = 3500.0;

/// Parses scenario text. `base_dir` resolves relative series paths; the
/// series themselves are not read. Returns params and the resolved paths.
struct ScenarioConfig {
    ScenarioParams params;
    std::filesystem::path price_series;
    std::filesystem::path subsidy_series;
    std::optional<std::filesystem::path> target_series;
    calibration::Loss target_loss = calibration::Loss::squared_error;
};

ScenarioConfig parse_scenario_config(const std::string& text,
                                     const std::filesystem::path& base_dir,
                                     const std::string& source = "scenario");

/// Reads the scenario file and every series it names, validates the
/// parameters and checks both series cover [start_year, end_year].
ScenarioBundle load_scenario(const std::filesystem::path& config_path);

/// Scenario text for `params` with the given series paths; parses back to
/// the same params.
std::string render_scenario_config(const ScenarioConfig& config);

}  // namespace pvabm::io
