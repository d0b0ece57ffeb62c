#include "pvabm/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>

#include "pvabm/adoption.hpp"

namespace pvabm::calibration {

namespace {

struct Scored {
    Candidate at;
    double loss = std::numeric_limits<double>::quiet_NaN();
};

// Non-finite losses never win.
bool better(const Scored& a, const Scored& b) {
    const bool fa = std::isfinite(a.loss);
    const bool fb = std::isfinite(b.loss);
    if (fa != fb) return fa;
    if (!fa) return false;
    return std::tie(a.loss, a.at.alpha, a.at.beta) < std::tie(b.loss, b.at.alpha, b.at.beta);
}

ScenarioParams fitting_params(const ScenarioParams& params) {
    ScenarioParams p = params;
    p.mode = Mode::deterministic;
    p.adoption_semantics = AdoptionSemantics::hazard;
    return p;
}

double loss_of(const ScenarioParams& fit, Candidate c, const YearSeries& prices,
               const YearSeries& subsidies, const CalibrationTarget& target) {
    ScenarioParams p = fit;
    p.alpha = c.alpha;
    p.beta = c.beta;
    const SimulationResult run = adoption::run_simulation(p, prices, subsidies);
    double total = 0.0;
    for (const auto& [year, observed] : target.observations) {
        const double simulated =
            run.records[static_cast<std::size_t>(year - p.start_year)].cumulative_adopters;
        const double diff = simulated - observed;
        total += target.loss == Loss::squared_error ? diff * diff : std::abs(diff);
    }
    return total;
}

}  // namespace

void CalibrationTarget::validate(const ScenarioParams& params) const {
    if (observations.empty()) {
        throw ValidationError("observations", "calibration target needs at least one observation");
    }
    for (const auto& [year, value] : observations) {
        if (year < params.start_year || year > params.end_year) {
            throw ValidationError("year", "observation year " + std::to_string(year) +
                                              " outside [start_year, end_year]");
        }
        if (!std::isfinite(value) || value < 0.0 ||
            value > static_cast<double>(params.total_farmers)) {
            throw ValidationError("cumulative_adopters",
                                  "observation for " + std::to_string(year) +
                                      " must lie in [0, total_farmers]");
        }
    }
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (count < 1 || !(lo > 0.0) || !(hi >= lo)) {
        throw ValidationError("grid", "need count >= 1 and 0 < lo <= hi");
    }
    if (count == 1) return {lo};
    std::vector<double> out(static_cast<std::size_t>(count));
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (count - 1));
    }
    // exp(log(x)) is not always x
    out.front() = lo;
    out.back() = hi;
    return out;
}

double evaluate_loss(Candidate candidate, const ScenarioParams& params, const YearSeries& prices,
                     const YearSeries& subsidies, const CalibrationTarget& target,
                     const SearchBounds& bounds) {
    if (!bounds.contains(candidate)) {
        throw ValidationError("candidate", "alpha/beta outside the search bounds");
    }
    const ScenarioParams fit = fitting_params(params);
    fit.validate();
    target.validate(fit);
    return loss_of(fit, candidate, prices, subsidies, target);
}

CalibrationResult calibrate(const ScenarioParams& params, const YearSeries& prices,
                            const YearSeries& subsidies, const CalibrationTarget& target,
                            int budget, const CalibrationOptions& options) {
    const ScenarioParams fit = fitting_params(params);
    fit.validate();
    target.validate(fit);
    adoption::check_coverage(fit, prices, subsidies);
    const SearchBounds& bounds = options.bounds;
    if (budget < options.grid_size()) {
        throw ValidationError("budget", "must be at least the grid size " +
                                            std::to_string(options.grid_size()));
    }

    const std::vector<double> alphas =
        log_grid(bounds.alpha_min, bounds.alpha_max, options.grid_alpha);
    const std::vector<double> betas = log_grid(bounds.beta_min, bounds.beta_max, options.grid_beta);

    std::vector<Scored> grid;
    grid.reserve(static_cast<std::size_t>(options.grid_size()));
    for (double a : alphas) {
        for (double b : betas) grid.push_back({{a, b}});
    }
    auto score = [&](Scored& s) {
        try {
            s.loss = loss_of(fit, s.at, prices, subsidies, target);
        } catch (const Error&) {
            s.loss = std::numeric_limits<double>::quiet_NaN();
        }
    };
    unsigned threads = options.threads ? options.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
    if (threads <= 1) {
        for (auto& s : grid) score(s);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < grid.size(); i += threads) score(grid[i]);
            });
        }
    }

    Scored best = grid.front();
    for (const auto& s : grid) {
        if (better(s, best)) best = s;
    }
    if (!std::isfinite(best.loss)) {
        throw CalibrationError("loss is non-finite at every grid point");
    }

    CalibrationResult result;
    result.best_grid_loss = best.loss;
    result.best_grid_point = best.at;
    int evaluations = options.grid_size();

    // Compass search over (log alpha, log beta).
    const double lo_a = std::log(bounds.alpha_min), hi_a = std::log(bounds.alpha_max);
    const double lo_b = std::log(bounds.beta_min), hi_b = std::log(bounds.beta_max);
    double step_a = options.grid_alpha > 1 ? (hi_a - lo_a) / (options.grid_alpha - 1) : 1.0;
    double step_b = options.grid_beta > 1 ? (hi_b - lo_b) / (options.grid_beta - 1) : 1.0;
    bool converged = false;
    while (true) {
        if (std::max(step_a, step_b) < options.tolerance) {
            converged = true;
            break;
        }
        const double la = std::log(best.at.alpha);
        const double lb = std::log(best.at.beta);
        const Candidate polls[] = {
            {std::exp(std::clamp(la + step_a, lo_a, hi_a)), best.at.beta},
            {std::exp(std::clamp(la - step_a, lo_a, hi_a)), best.at.beta},
            {best.at.alpha, std::exp(std::clamp(lb + step_b, lo_b, hi_b))},
            {best.at.alpha, std::exp(std::clamp(lb - step_b, lo_b, hi_b))},
        };
        Scored round_best{best.at, std::numeric_limits<double>::infinity()};
        bool exhausted = false;
        for (Candidate c : polls) {
            c.alpha = std::clamp(c.alpha, bounds.alpha_min, bounds.alpha_max);
            c.beta = std::clamp(c.beta, bounds.beta_min, bounds.beta_max);
            if (c.alpha == best.at.alpha && c.beta == best.at.beta) continue;
            if (evaluations >= budget) {
                exhausted = true;
                break;
            }
            Scored s{c};
            score(s);
            ++evaluations;
            if (better(s, round_best)) round_best = s;
        }
        if (std::isfinite(round_best.loss) && round_best.loss < best.loss) {
            best = round_best;
        } else if (exhausted) {
            break;
        } else {
            step_a *= 0.5;
            step_b *= 0.5;
        }
        if (exhausted) break;
    }

    result.alpha = best.at.alpha;
    result.beta = best.at.beta;
    result.achieved_loss = best.loss;
    result.evaluations = evaluations;
    result.converged = converged;
    return result;
}

}  // namespace pvabm::calibration
