#include "pvabm/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <system_error>
#include <vector>

namespace pvabm::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string field = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start);
        // trim spaces around fields
        const auto first = field.find_first_not_of(" \t");
        const auto last = field.find_last_not_of(" \t");
        fields.push_back(first == std::string::npos ? std::string()
                                                    : field.substr(first, last - first + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::optional<int> to_int(const std::string& text) {
    int v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
    return v;
}

std::optional<double> to_double(const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || begin == end || !std::isfinite(v)) return std::nullopt;
    return v;
}

struct Row {
    std::size_t line;
    int year;
    double value;
};

// Parses the header and rows; checks numbers and year ordering. Contiguity is
// left to the caller.
std::vector<Row> read_rows(std::istream& in, std::string_view value_column,
                           const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!read_line(in, line)) {
        throw MissingHeaderError(source, 0, "empty input, missing header row");
    }
    ++line_no;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const std::vector<std::string> header = split_fields(line);
    std::optional<std::size_t> year_col, value_col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "year") year_col = i;
        if (header[i] == value_column) value_col = i;
    }
    if (!year_col || !value_col) {
        throw MissingHeaderError(source, line_no,
                                 "header must name columns 'year' and '" +
                                     std::string(value_column) + "', got '" + line + "'");
    }

    std::vector<Row> rows;
    while (read_line(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw CsvError(source, line_no,
                           "expected " + std::to_string(header.size()) + " fields, got " +
                               std::to_string(fields.size()));
        }
        const auto year = to_int(fields[*year_col]);
        if (!year) throw BadNumberError(source, line_no, "year", fields[*year_col]);
        const auto value = to_double(fields[*value_col]);
        if (!value) {
            throw BadNumberError(source, line_no, std::string(value_column), fields[*value_col]);
        }
        if (!rows.empty() && *year <= rows.back().year) {
            for (const Row& r : rows) {
                if (r.year == *year) throw DuplicateYearError(source, line_no, *year);
            }
            throw CsvError(source, line_no,
                           "year " + std::to_string(*year) + " is out of order after " +
                               std::to_string(rows.back().year));
        }
        rows.push_back({line_no, *year, *value});
    }
    if (rows.empty()) throw CsvError(source, line_no, "no data rows");
    return rows;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

}  // namespace

YearSeries parse_year_series(std::istream& in, std::string_view value_column,
                             const std::string& source) {
    const std::vector<Row> rows = read_rows(in, value_column, source);
    std::vector<std::pair<int, MoneyEur>> entries;
    entries.reserve(rows.size());
    for (const Row& r : rows) {
        if (!entries.empty() && r.year != entries.back().first + 1) {
            throw YearGapError(source, r.line, entries.back().first + 1);
        }
        entries.emplace_back(r.year, MoneyEur(r.value, value_column));
    }
    return YearSeries(std::move(entries));
}

YearSeries read_year_series(const std::filesystem::path& path, std::string_view value_column) {
    std::ifstream in = open_input(path);
    return parse_year_series(in, value_column, path.string());
}

calibration::CalibrationTarget parse_target(std::istream& in, const std::string& source) {
    calibration::CalibrationTarget target;
    for (const Row& r : read_rows(in, kTargetColumn, source)) {
        target.observations.emplace_back(r.year, r.value);
    }
    return target;
}

calibration::CalibrationTarget read_target(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    return parse_target(in, path.string());
}

std::string format_sig6(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

std::string format_exact(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

void write_year_series(std::ostream& out, const YearSeries& series,
                       std::string_view value_column) {
    out << "year," << value_column << '\n';
    for (const auto& [year, value] : series.entries()) {
        out << year << ',' << format_sig6(value.value()) << '\n';
    }
}

}  // namespace pvabm::io
