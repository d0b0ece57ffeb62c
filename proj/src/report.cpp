#include "pvabm/report.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "pvabm/csv.hpp"

namespace pvabm::io {

namespace {

using nlohmann::ordered_json;

double sig6(double v) { return std::strtod(format_sig6(v).c_str(), nullptr); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw ValidationError("format", "expected 'csv' or 'json', got '" + std::string(text) + "'");
}

std::string render(const SimulationResult& result, Format format) {
    if (format == Format::csv) {
        std::ostringstream os;
        os << "year,energy_price,subsidy,economic_utility,probability,new_adopters,"
              "cumulative_adopters\n";
        for (const YearRecord& r : result.records) {
            os << r.year << ',' << format_sig6(r.energy_price.value()) << ','
               << format_sig6(r.subsidy.value()) << ',' << format_sig6(r.economic_utility.value())
               << ',' << format_sig6(r.probability) << ',' << format_sig6(r.new_adopters) << ','
               << format_sig6(r.cumulative_adopters) << '\n';
        }
        return os.str();
    }
    ordered_json records = ordered_json::array();
    for (const YearRecord& r : result.records) {
        records.push_back({{"year", r.year},
                           {"energy_price", sig6(r.energy_price.value())},
                           {"subsidy", sig6(r.subsidy.value())},
                           {"economic_utility", sig6(r.economic_utility.value())},
                           {"probability", sig6(r.probability)},
                           {"new_adopters", sig6(r.new_adopters)},
                           {"cumulative_adopters", sig6(r.cumulative_adopters)}});
    }
    return dump({{"params_digest", result.params_digest}, {"records", std::move(records)}});
}

std::string render(const adoption::MonteCarloSummary& summary, Format format) {
    if (format == Format::csv) {
        std::ostringstream os;
        os << "year,mean,stddev,min,max\n";
        for (const auto& y : summary.years) {
            os << y.year << ',' << format_sig6(y.mean) << ',' << format_sig6(y.stddev) << ','
               << format_sig6(y.min) << ',' << format_sig6(y.max) << '\n';
        }
        return os.str();
    }
    ordered_json years = ordered_json::array();
    for (const auto& y : summary.years) {
        years.push_back({{"year", y.year},
                         {"mean", sig6(y.mean)},
                         {"stddev", sig6(y.stddev)},
                         {"min", sig6(y.min)},
                         {"max", sig6(y.max)}});
    }
    return dump({{"replications", summary.replications},
                 {"base_seed", summary.base_seed},
                 {"years", std::move(years)}});
}

std::string render(const calibration::CalibrationResult& result, Format format) {
    if (format == Format::csv) {
        std::ostringstream os;
        os << "alpha,beta,achieved_loss,evaluations,converged\n"
           << format_exact(result.alpha) << ',' << format_exact(result.beta) << ','
           << format_exact(result.achieved_loss) << ',' << result.evaluations << ','
           << (result.converged ? "true" : "false") << '\n';
        return os.str();
    }
    return dump({{"alpha", result.alpha},
                 {"beta", result.beta},
                 {"achieved_loss", result.achieved_loss},
                 {"evaluations", result.evaluations},
                 {"converged", result.converged},
                 {"best_grid_point",
                  {{"alpha", result.best_grid_point.alpha},
                   {"beta", result.best_grid_point.beta},
                   {"loss", result.best_grid_loss}}}});
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot move result into '" + path.string() + "': " + ec.message());
    }
}

}  // namespace pvabm::io
