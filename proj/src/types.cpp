#include "pvabm/types.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pvabm {

namespace {

std::string join_years(const std::vector<int>& years) {
    std::string out;
    for (std::size_t i = 0; i < years.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(years[i]);
    }
    return out;
}

void require(bool ok, std::string_view field, const std::string& message) {
    if (!ok) throw ValidationError(std::string(field), message);
}

void require_finite(double v, std::string_view field) {
    require(std::isfinite(v), field, "must be finite");
}

}  // namespace

SeriesGapError::SeriesGapError(std::string series, std::vector<int> missing_years)
    : Error("series '" + series + "' is missing year(s) " + join_years(missing_years)),
      series_(std::move(series)),
      missing_(std::move(missing_years)) {}

MoneyEur::MoneyEur(double value, std::string_view field) : value_(value) {
    require_finite(value, field);
}

YearSeries::YearSeries(std::vector<std::pair<int, MoneyEur>> entries) {
    if (entries.empty()) return;
    first_year_ = entries.front().first;
    values_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const int expected = first_year_ + static_cast<int>(i);
        const int year = entries[i].first;
        if (year < expected) {
            throw ValidationError("year", "years must be strictly increasing; " +
                                              std::to_string(year) + " repeats or goes back");
        }
        if (year > expected) {
            throw ValidationError("year", "gap in series, missing " + std::to_string(expected));
        }
        values_.push_back(entries[i].second);
    }
}

int YearSeries::first_year() const {
    if (empty()) throw Error("empty YearSeries has no first year");
    return first_year_;
}

int YearSeries::last_year() const {
    if (empty()) throw Error("empty YearSeries has no last year");
    return first_year_ + static_cast<int>(values_.size()) - 1;
}

bool YearSeries::contains(int year) const noexcept {
    return !empty() && year >= first_year_ &&
           year < first_year_ + static_cast<int>(values_.size());
}

MoneyEur YearSeries::at(int year) const {
    if (!contains(year)) throw SeriesGapError("series", {year});
    return values_[static_cast<std::size_t>(year - first_year_)];
}

std::vector<int> YearSeries::missing_in(int from, int to) const {
    std::vector<int> missing;
    for (int y = from; y <= to; ++y) {
        if (!contains(y)) missing.push_back(y);
    }
    return missing;
}

std::vector<std::pair<int, MoneyEur>> YearSeries::entries() const {
    std::vector<std::pair<int, MoneyEur>> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out.emplace_back(first_year_ + static_cast<int>(i), values_[i]);
    }
    return out;
}

std::string_view to_string(AdoptionSemantics s) noexcept {
    return s == AdoptionSemantics::hazard ? "hazard" : "literal";
}

std::string_view to_string(Mode m) noexcept {
    return m == Mode::deterministic ? "deterministic" : "stochastic";
}

AdoptionSemantics parse_semantics(std::string_view text, std::string_view field) {
    if (text == "hazard") return AdoptionSemantics::hazard;
    if (text == "literal") return AdoptionSemantics::literal;
    throw ValidationError(std::string(field),
                          "expected 'hazard' or 'literal', got '" + std::string(text) + "'");
}

Mode parse_mode(std::string_view text, std::string_view field) {
    if (text == "deterministic") return Mode::deterministic;
    if (text == "stochastic") return Mode::stochastic;
    throw ValidationError(std::string(field), "expected 'deterministic' or 'stochastic', got '" +
                                                  std::string(text) + "'");
}

void ScenarioParams::validate() const {
    require_finite(pv_cost_min, "pv_cost_min");
    require_finite(pv_cost_max, "pv_cost_max");
    require(pv_cost_min >= 0.0, "pv_cost_min", "must be >= 0");
    require(pv_cost_min <= pv_cost_max, "pv_cost_max", "must be >= pv_cost_min");
    require_finite(maintenance_rate, "maintenance_rate");
    require(maintenance_rate >= 0.0 && maintenance_rate < 1.0, "maintenance_rate",
            "must be in [0, 1)");
    require_finite(discount_rate, "discount_rate");
    require(discount_rate > -1.0, "discount_rate", "must be > -1");
    require(total_farmers >= 1, "total_farmers", "must be >= 1");
    require(start_year <= end_year, "end_year", "must be >= start_year");
    require(horizon_years >= 0, "horizon_years", "must be >= 0");
    require_finite(annual_generation_kwh, "annual_generation_kwh");
    require(annual_generation_kwh >= 0.0, "annual_generation_kwh", "must be >= 0");
    require_finite(alpha, "alpha");
    require(alpha > 0.0, "alpha", "must be > 0");
    require_finite(beta, "beta");
    require(beta > 0.0 && beta <= 1.0, "beta", "must be in (0, 1]");
    require(!(mode == Mode::stochastic && adoption_semantics == AdoptionSemantics::literal),
            "adoption_semantics", "literal semantics is only defined for deterministic mode");
}

std::string ScenarioParams::digest() const {
    std::ostringstream os;
    char buf[64];
    auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << key << '=' << buf << ';';
    };
    put("pv_cost_min", pv_cost_min);
    put("pv_cost_max", pv_cost_max);
    put("maintenance_rate", maintenance_rate);
    put("discount_rate", discount_rate);
    os << "total_farmers=" << total_farmers << ';' << "start_year=" << start_year << ';'
       << "end_year=" << end_year << ';' << "horizon_years=" << horizon_years << ';';
    put("annual_generation_kwh", annual_generation_kwh);
    put("alpha", alpha);
    put("beta", beta);
    os << "adoption_semantics=" << to_string(adoption_semantics) << ';'
       << "mode=" << to_string(mode) << ';' << "seed=" << seed << ';';

    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void AgentState::validate(const ScenarioParams& params) const {
    require(pv_cost.value() >= params.pv_cost_min && pv_cost.value() <= params.pv_cost_max,
            "pv_cost", "must lie in [pv_cost_min, pv_cost_max]");
    if (adoption_year) {
        require(*adoption_year >= params.start_year && *adoption_year <= params.end_year,
                "adoption_year", "must lie in [start_year, end_year]");
    }
}

void YearRecord::validate(const ScenarioParams& params) const {
    require(std::isfinite(probability) && probability >= 0.0 && probability < params.beta,
            "probability", "must lie in [0, beta)");
    require(std::isfinite(new_adopters) && new_adopters >= 0.0, "new_adopters", "must be >= 0");
    require(std::isfinite(cumulative_adopters) && cumulative_adopters >= 0.0 &&
                cumulative_adopters <= static_cast<double>(params.total_farmers),
            "cumulative_adopters", "must lie in [0, total_farmers]");
}

void SimulationResult::validate(const ScenarioParams& params) const {
    require(records.size() == static_cast<std::size_t>(params.year_count()), "records",
            "expected one record per year in [start_year, end_year]");
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        require(r.year == params.start_year + static_cast<int>(i), "records",
                "record years must run start_year..end_year in order");
        r.validate(params);
        if (params.adoption_semantics == AdoptionSemantics::hazard && i > 0) {
            require(r.cumulative_adopters >= records[i - 1].cumulative_adopters,
                    "cumulative_adopters", "must be non-decreasing under hazard semantics");
        }
    }
}

double round_half_up(double x) noexcept { return std::floor(x + 0.5); }

}  // namespace pvabm
