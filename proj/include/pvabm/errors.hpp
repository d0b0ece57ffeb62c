#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvabm {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violated a type invariant. `field()` names the offending field.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A year-indexed series does not cover the years a simulation needs.
class SeriesGapError : public Error {
public:
    SeriesGapError(std::string series, std::vector<int> missing_years);

    const std::string& series() const noexcept { return series_; }
    const std::vector<int>& missing_years() const noexcept { return missing_; }

private:
    std::string series_;
    std::vector<int> missing_;
};

/// Base for CSV ingestion failures. `line()` is 1-based; 0 means "no line".
/// `source()` names the input (a path, or empty for an anonymous stream).
class CsvError : public Error {
public:
    CsvError(std::string source, std::size_t line, const std::string& message)
        : Error(format(source, line, message)), source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, std::size_t line,
                              const std::string& message) {
        std::string out = source.empty() ? std::string("csv") : source;
        if (line != 0) out += ":" + std::to_string(line);
        return out + ": " + message;
    }

    std::string source_;
    std::size_t line_;
};

class MissingHeaderError : public CsvError {
public:
    using CsvError::CsvError;
};

class DuplicateYearError : public CsvError {
public:
    DuplicateYearError(std::string source, std::size_t line, int year)
        : CsvError(std::move(source), line, "duplicate year " + std::to_string(year)),
          year_(year) {}
    int year() const noexcept { return year_; }

private:
    int year_;
};

class YearGapError : public CsvError {
public:
    YearGapError(std::string source, std::size_t line, int missing_year)
        : CsvError(std::move(source), line, "year gap, missing " + std::to_string(missing_year)),
          missing_year_(missing_year) {}
    int missing_year() const noexcept { return missing_year_; }

private:
    int missing_year_;
};

class BadNumberError : public CsvError {
public:
    BadNumberError(std::string source, std::size_t line, const std::string& column,
                   const std::string& text)
        : CsvError(std::move(source), line,
                   "column '" + column + "': not a number: '" + text + "'"),
          column_(column) {}
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

/// Scenario file could not be read or contains unknown/mistyped keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure: missing input, unwritable output.
class IoError : public Error {
public:
    using Error::Error;
};

/// A Monte Carlo replication failed; `seed()` reproduces it with `run`.
class ReplicationError : public Error {
public:
    ReplicationError(std::uint64_t seed, const std::string& message)
        : Error("replication with seed " + std::to_string(seed) + ": " + message), seed_(seed) {}
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

}  // namespace pvabm
