#pragma once

// Shared domain types for the PV adoption model. Every type validates its
// invariants on construction (or via validate()) and throws ValidationError
// naming the offending field.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pvabm/errors.hpp"

namespace pvabm {

/// Amount of money in euro. Never holds NaN or infinity.
class MoneyEur {
public:
    constexpr MoneyEur() = default;
    explicit MoneyEur(double value, std::string_view field = "money");

    constexpr double value() const noexcept { return value_; }

    friend MoneyEur operator+(MoneyEur a, MoneyEur b) { return MoneyEur(a.value_ + b.value_); }
    friend MoneyEur operator-(MoneyEur a, MoneyEur b) { return MoneyEur(a.value_ - b.value_); }
    friend MoneyEur operator*(MoneyEur a, double k) { return MoneyEur(a.value_ * k); }
    friend MoneyEur operator*(double k, MoneyEur a) { return MoneyEur(a.value_ * k); }
    friend constexpr bool operator==(MoneyEur, MoneyEur) = default;
    friend constexpr auto operator<=>(MoneyEur, MoneyEur) = default;

private:
    double value_ = 0.0;
};

/// Contiguous year -> money series (energy price per kWh, subsidy per system).
class YearSeries {
public:
    YearSeries() = default;
    /// Entries must be strictly increasing and gap-free.
    explicit YearSeries(std::vector<std::pair<int, MoneyEur>> entries);

    bool empty() const noexcept { return values_.empty(); }
    std::size_t size() const noexcept { return values_.size(); }
    int first_year() const;
    int last_year() const;
    bool contains(int year) const noexcept;

    /// Throws SeriesGapError when `year` is outside [first_year, last_year].
    MoneyEur at(int year) const;

    /// Years of [from, to] the series does not cover, ascending.
    std::vector<int> missing_in(int from, int to) const;

    std::vector<std::pair<int, MoneyEur>> entries() const;

    bool operator==(const YearSeries&) const = default;

private:
    int first_year_ = 0;
    std::vector<MoneyEur> values_;
};

enum class AdoptionSemantics { hazard, literal };
enum class Mode { deterministic, stochastic };

std::string_view to_string(AdoptionSemantics s) noexcept;
std::string_view to_string(Mode m) noexcept;
/// Throw ValidationError(field) on an unknown name.
AdoptionSemantics parse_semantics(std::string_view text, std::string_view field = "adoption_semantics");
Mode parse_mode(std::string_view text, std::string_view field = "mode");

/// Scenario inputs. Defaults are the published study inputs plus the model
/// constants the study leaves open (horizon, generation, alpha, beta).
struct ScenarioParams {
    double pv_cost_min = 5000.0;
    double pv_cost_max = 15000.0;
    double maintenance_rate = 0.02;
    double discount_rate = 0.04;
    std::int64_t total_farmers = 18000;
    int start_year = 2005;
    int end_year = 2022;
    int horizon_years = 20;
    double annual_generation_kwh = 6000.0;
    double alpha = 1.0;
    double beta = 0.01;
    AdoptionSemantics adoption_semantics = AdoptionSemantics::hazard;
    Mode mode = Mode::deterministic;
    std::uint64_t seed = 1;

    /// Throws ValidationError naming the first offending field.
    void validate() const;

    int year_count() const noexcept { return end_year - start_year + 1; }
    /// Cost of the representative agent used by deterministic mode.
    MoneyEur midpoint_cost() const { return MoneyEur(0.5 * (pv_cost_min + pv_cost_max)); }

    /// Stable 16-hex-digit identifier of every field (FNV-1a over a canonical dump).
    std::string digest() const;

    bool operator==(const ScenarioParams&) const = default;
};

/// One farmer. Adopted exactly when adoption_year is set.
struct AgentState {
    std::int64_t id = 0;
    MoneyEur pv_cost;
    std::optional<int> adoption_year;

    bool adopted() const noexcept { return adoption_year.has_value(); }
    void validate(const ScenarioParams& params) const;
    bool operator==(const AgentState&) const = default;
};

/// One simulated year.
struct YearRecord {
    int year = 0;
    MoneyEur energy_price;  // EUR per kWh
    MoneyEur subsidy;
    MoneyEur economic_utility;
    double probability = 0.0;
    double new_adopters = 0.0;
    double cumulative_adopters = 0.0;

    void validate(const ScenarioParams& params) const;
    bool operator==(const YearRecord&) const = default;
};

struct SimulationResult {
    std::string params_digest;
    std::vector<YearRecord> records;

    /// One record per scenario year, in order; hazard runs never decrease.
    void validate(const ScenarioParams& params) const;
    bool operator==(const SimulationResult&) const = default;
};

/// Round-half-up used when reporting fractional adopter counts.
double round_half_up(double x) noexcept;

}  // namespace pvabm
