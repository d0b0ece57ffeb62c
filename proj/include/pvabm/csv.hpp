#pragma once

// Year-indexed CSV files: energy prices, subsidies and calibration targets.
// Header row required; "year" column plus a named value column; "." as the
// decimal separator.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pvabm/calibration.hpp"
#include "pvabm/types.hpp"

namespace pvabm::io {

inline constexpr std::string_view kPriceColumn = "price_eur_per_kwh";
inline constexpr std::string_view kSubsidyColumn = "subsidy_eur";
inline constexpr std::string_view kTargetColumn = "cumulative_adopters";

/// Reads a contiguous series from the "year" and `value_column` columns.
/// Throws MissingHeaderError, DuplicateYearError, YearGapError or
/// BadNumberError with the 1-based line number; `source` prefixes messages.
YearSeries parse_year_series(std::istream& in, std::string_view value_column,
                             const std::string& source = {});

YearSeries read_year_series(const std::filesystem::path& path, std::string_view value_column);

/// Target rows need increasing, unique years but may skip years.
calibration::CalibrationTarget parse_target(std::istream& in, const std::string& source = {});

calibration::CalibrationTarget read_target(const std::filesystem::path& path);

void write_year_series(std::ostream& out, const YearSeries& series, std::string_view value_column);

/// Shortest text of `value` rounded to six significant digits ("%.6g" style).
std::string format_sig6(double value);

/// Shortest text that reads back as exactly `value`.
std::string format_exact(double value);

}  // namespace pvabm::io
