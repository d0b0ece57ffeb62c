#pragma once

// Serialization of results to CSV or JSON. Simulation and Monte Carlo values
// are written to six significant digits; fitted calibration parameters are
// written exactly so they can be fed back into a run.

#include <filesystem>
#include <string>
#include <string_view>

#include "pvabm/adoption.hpp"
#include "pvabm/calibration.hpp"
#include "pvabm/types.hpp"

namespace pvabm::io {

enum class Format { csv, json };

Format parse_format(std::string_view text);

std::string render(const SimulationResult& result, Format format);
std::string render(const adoption::MonteCarloSummary& summary, Format format);
std::string render(const calibration::CalibrationResult& result, Format format);

/// Writes `content` to a temporary sibling of `path` and renames it into
/// place, so a failed write never leaves a partial file. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

template <typename Result>
void write_result(const Result& result, Format format, const std::filesystem::path& path) {
    write_file_atomic(path, render(result, format));
}

}  // namespace pvabm::io
