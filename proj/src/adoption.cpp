#include "pvabm/adoption.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "pvabm/economics.hpp"

namespace pvabm::adoption {

double adoption_probability(MoneyEur economic_utility, double alpha, double beta,
                            std::int64_t total_farmers) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha", "must be > 0");
    if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError("beta", "must be in (0, 1]");
    if (total_farmers < 1) throw ValidationError("total_farmers", "must be >= 1");

    const double z = alpha * (economic_utility.value() / static_cast<double>(total_farmers));
    double p;
    if (z >= 0.0) {
        p = beta / (1.0 + std::exp(-z));
    } else {
        const double e = std::exp(z);  // underflows to 0, never overflows
        p = beta * e / (1.0 + e);
    }
    return std::clamp(p, std::numeric_limits<double>::denorm_min(), std::nextafter(beta, 0.0));
}

SimulationState SimulationState::initial(const ScenarioParams& params) {
    params.validate();
    SimulationState state;
    state.year = params.start_year;
    if (params.mode == Mode::stochastic) {
        state.rng = Rng(params.seed);
        state.agents.reserve(static_cast<std::size_t>(params.total_farmers));
        for (std::int64_t id = 0; id < params.total_farmers; ++id) {
            // u < 1, so clamp only guards the rounding of lo + (hi - lo) * u
            const double cost = std::min(
                state.rng.uniform(params.pv_cost_min, params.pv_cost_max), params.pv_cost_max);
            state.agents.push_back(AgentState{id, MoneyEur(cost), std::nullopt});
        }
    }
    return state;
}

namespace {

YearRecord step_deterministic(SimulationState& state, const ScenarioParams& params,
                              MoneyEur price, MoneyEur subsidy) {
    const double n = static_cast<double>(params.total_farmers);
    const MoneyEur utility =
        economics::utility_for_cost(params.midpoint_cost(), params, price, subsidy);
    const double p = adoption_probability(utility, params.alpha, params.beta, params.total_farmers);

    double added;
    if (params.adoption_semantics == AdoptionSemantics::hazard) {
        added = p * (n - state.cumulative_adopters);
        state.cumulative_adopters = std::min(n, state.cumulative_adopters + added);
    } else {
        const double level = p * n;
        added = std::max(0.0, level - state.cumulative_adopters);
        state.cumulative_adopters = level;
    }
    return YearRecord{state.year, price,  subsidy, utility, p, added, state.cumulative_adopters};
}

YearRecord step_stochastic(SimulationState& state, const ScenarioParams& params, MoneyEur price,
                           MoneyEur subsidy) {
    if (state.agents.size() != static_cast<std::size_t>(params.total_farmers)) {
        throw ValidationError("agents", "stochastic state must hold total_farmers agents");
    }
    double utility_sum = 0.0;
    double probability_sum = 0.0;
    std::int64_t added = 0;
    std::int64_t adopted = 0;
    for (AgentState& agent : state.agents) {
        const MoneyEur utility = economics::agent_utility(agent, params, price, subsidy);
        const double p =
            adoption_probability(utility, params.alpha, params.beta, params.total_farmers);
        utility_sum += utility.value();
        probability_sum += p;
        if (!agent.adopted() && state.rng.bernoulli(p)) {
            agent.adoption_year = state.year;
            ++added;
        }
        if (agent.adopted()) ++adopted;
    }
    state.cumulative_adopters = static_cast<double>(adopted);
    const double n = static_cast<double>(params.total_farmers);
    // mean of values below beta may round up to it
    const double mean_p = std::min(probability_sum / n, std::nextafter(params.beta, 0.0));
    return YearRecord{state.year,
                      price,
                      subsidy,
                      MoneyEur(utility_sum / n),
                      mean_p,
                      static_cast<double>(added),
                      state.cumulative_adopters};
}

}  // namespace

std::pair<SimulationState, YearRecord> step_year(SimulationState state,
                                                 const ScenarioParams& params,
                                                 MoneyEur energy_price, MoneyEur subsidy) {
    if (state.year < params.start_year || state.year > params.end_year) {
        throw ValidationError("year", "state year " + std::to_string(state.year) +
                                          " is outside [start_year, end_year]");
    }
    YearRecord record = params.mode == Mode::deterministic
                            ? step_deterministic(state, params, energy_price, subsidy)
                            : step_stochastic(state, params, energy_price, subsidy);
    ++state.year;
    return {std::move(state), record};
}

std::pair<SimulationState, YearRecord> step_year(SimulationState state,
                                                 const ScenarioParams& params,
                                                 const YearSeries& prices,
                                                 const YearSeries& subsidies) {
    const int year = state.year;
    if (!prices.contains(year)) throw SeriesGapError("energy_price", {year});
    if (!subsidies.contains(year)) throw SeriesGapError("subsidy", {year});
    return step_year(std::move(state), params, prices.at(year), subsidies.at(year));
}

void check_coverage(const ScenarioParams& params, const YearSeries& prices,
                    const YearSeries& subsidies) {
    if (auto missing = prices.missing_in(params.start_year, params.end_year); !missing.empty()) {
        throw SeriesGapError("energy_price", std::move(missing));
    }
    if (auto missing = subsidies.missing_in(params.start_year, params.end_year);
        !missing.empty()) {
        throw SeriesGapError("subsidy", std::move(missing));
    }
}

SimulationResult run_simulation(const ScenarioParams& params, const YearSeries& prices,
                                const YearSeries& subsidies) {
    params.validate();
    check_coverage(params, prices, subsidies);

    SimulationResult result;
    result.params_digest = params.digest();
    result.records.reserve(static_cast<std::size_t>(params.year_count()));
    SimulationState state = SimulationState::initial(params);
    for (int year = params.start_year; year <= params.end_year; ++year) {
        auto [next, record] = step_year(std::move(state), params, prices.at(year), subsidies.at(year));
        state = std::move(next);
        result.records.push_back(record);
    }
    return result;
}

MonteCarloSummary run_monte_carlo(const ScenarioParams& params, const YearSeries& prices,
                                  const YearSeries& subsidies, int replications,
                                  std::uint64_t base_seed, unsigned threads) {
    if (replications < 1) throw ValidationError("replications", "must be >= 1");
    if (params.mode != Mode::stochastic) {
        throw ValidationError("mode", "Monte Carlo replication requires stochastic mode");
    }
    params.validate();
    check_coverage(params, prices, subsidies);

    const auto reps = static_cast<std::size_t>(replications);
    const auto years = static_cast<std::size_t>(params.year_count());
    // per-replication results keyed by index; reduced in index order below
    std::vector<std::vector<double>> cumulative(reps);
    std::vector<std::exception_ptr> failures(reps);

    auto run_one = [&](std::size_t i) {
        const std::uint64_t seed = base_seed + i;
        try {
            ScenarioParams p = params;
            p.seed = seed;
            const SimulationResult r = run_simulation(p, prices, subsidies);
            std::vector<double> series;
            series.reserve(years);
            for (const auto& rec : r.records) series.push_back(rec.cumulative_adopters);
            cumulative[i] = std::move(series);
        } catch (const std::exception& e) {
            failures[i] = std::make_exception_ptr(ReplicationError(seed, e.what()));
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
    if (threads <= 1) {
        for (std::size_t i = 0; i < reps; ++i) run_one(i);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < reps; i += threads) run_one(i);
            });
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    MonteCarloSummary summary;
    summary.replications = replications;
    summary.base_seed = base_seed;
    summary.years.reserve(years);
    for (std::size_t y = 0; y < years; ++y) {
        YearStatistics s;
        s.year = params.start_year + static_cast<int>(y);
        s.min = std::numeric_limits<double>::infinity();
        s.max = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (std::size_t i = 0; i < reps; ++i) {
            const double v = cumulative[i][y];
            sum += v;
            s.min = std::min(s.min, v);
            s.max = std::max(s.max, v);
        }
        s.mean = sum / static_cast<double>(reps);
        if (reps > 1) {
            double ss = 0.0;
            for (std::size_t i = 0; i < reps; ++i) {
                const double d = cumulative[i][y] - s.mean;
                ss += d * d;
            }
            s.stddev = std::sqrt(ss / static_cast<double>(reps - 1));
        }
        // the mean of identical values can drift by an ulp
        s.mean = std::clamp(s.mean, s.min, s.max);
        summary.years.push_back(s);
    }
    return summary;
}

}  // namespace pvabm::adoption
