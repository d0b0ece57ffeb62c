#pragma once

// Yearly adoption dynamics: the logistic adoption probability, the per-year
// update, whole-horizon runs and Monte Carlo replication of stochastic runs.

#include <cstdint>
#include <utility>
#include <vector>

#include "pvabm/random.hpp"
#include "pvabm/types.hpp"

namespace pvabm::adoption {

/// beta / (1 + exp(-alpha * utility / total_farmers)).
///
/// Evaluated without overflow for any finite utility. The result is clamped
/// into the open interval (0, beta): at extreme utilities the true value is
/// not representable, so the smallest positive double or the largest double
/// below beta is returned instead.
double adoption_probability(MoneyEur economic_utility, double alpha, double beta,
                            std::int64_t total_farmers);

/// Loop state of a single run.
struct SimulationState {
    int year = 0;
    /// Real-valued in deterministic mode; count of adopted agents otherwise.
    double cumulative_adopters = 0.0;
    /// Stochastic mode only, ordered by id.
    std::vector<AgentState> agents;
    Rng rng;

    /// State before the first year. Stochastic mode draws each agent's cost
    /// from Uniform[pv_cost_min, pv_cost_max] in id order.
    static SimulationState initial(const ScenarioParams& params);

    bool operator==(const SimulationState&) const = default;
};

/// Advances one year. `energy_price` and `subsidy` are this year's values.
std::pair<SimulationState, YearRecord> step_year(SimulationState state,
                                                 const ScenarioParams& params,
                                                 MoneyEur energy_price, MoneyEur subsidy);

/// Same, looking the year up in the series. Throws SeriesGapError naming the
/// series and the year when either is missing.
std::pair<SimulationState, YearRecord> step_year(SimulationState state,
                                                 const ScenarioParams& params,
                                                 const YearSeries& prices,
                                                 const YearSeries& subsidies);

/// Throws SeriesGapError if either series misses a year of the scenario.
void check_coverage(const ScenarioParams& params, const YearSeries& prices,
                    const YearSeries& subsidies);

/// Steps every year start_year..end_year. Coverage is checked before any
/// stepping, so a gap never yields a partial result.
SimulationResult run_simulation(const ScenarioParams& params, const YearSeries& prices,
                                const YearSeries& subsidies);

struct YearStatistics {
    int year = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for one replication
    double min = 0.0;
    double max = 0.0;

    bool operator==(const YearStatistics&) const = default;
};

struct MonteCarloSummary {
    int replications = 0;
    std::uint64_t base_seed = 0;
    std::vector<YearStatistics> years;

    bool operator==(const MonteCarloSummary&) const = default;
};

/// Runs `replications` stochastic simulations with seeds base_seed,
/// base_seed + 1, ... and summarises cumulative adopters per year.
/// `threads` = 0 picks the hardware concurrency. The summary does not depend
/// on the thread count.
MonteCarloSummary run_monte_carlo(const ScenarioParams& params, const YearSeries& prices,
                                  const YearSeries& subsidies, int replications,
                                  std::uint64_t base_seed, unsigned threads = 0);

}  // namespace pvabm::adoption
