#pragma once

// Fits the logistic parameters (alpha, beta) so that the deterministic hazard
// run reproduces observed cumulative adopter counts. A log-spaced grid picks
// a starting cell; a compass search with shrinking steps refines it.

#include <utility>
#include <vector>

#include "pvabm/types.hpp"

namespace pvabm::calibration {

enum class Loss { squared_error, absolute_error };

struct CalibrationTarget {
    /// (year, cumulative adopters) pairs.
    std::vector<std::pair<int, double>> observations;
    Loss loss = Loss::squared_error;

    /// Throws ValidationError on an empty target, a year outside the scenario
    /// or a count outside [0, total_farmers].
    void validate(const ScenarioParams& params) const;
};

struct Candidate {
    double alpha = 0.0;
    double beta = 0.0;
};

struct SearchBounds {
    double alpha_min = 1e-3;
    double alpha_max = 100.0;
    double beta_min = 1e-5;
    double beta_max = 1.0;

    bool contains(Candidate c) const noexcept {
        return c.alpha >= alpha_min && c.alpha <= alpha_max && c.beta >= beta_min &&
               c.beta <= beta_max;
    }
};

struct CalibrationOptions {
    SearchBounds bounds;
    int grid_alpha = 20;
    int grid_beta = 20;
    /// Refinement stops once both steps, in log-parameter units, fall below this.
    double tolerance = 1e-6;
    /// Worker threads for the grid phase; 0 = hardware concurrency.
    unsigned threads = 0;

    int grid_size() const noexcept { return grid_alpha * grid_beta; }
};

inline constexpr int kDefaultBudget = 20000;

struct CalibrationResult {
    double alpha = 0.0;
    double beta = 0.0;
    double achieved_loss = 0.0;
    int evaluations = 0;
    bool converged = false;
    /// Diagnostics.
    double best_grid_loss = 0.0;
    Candidate best_grid_point;
};

/// Loss of the deterministic hazard run with `candidate` against `target`.
/// Throws ValidationError when the candidate lies outside `bounds`.
double evaluate_loss(Candidate candidate, const ScenarioParams& params, const YearSeries& prices,
                     const YearSeries& subsidies, const CalibrationTarget& target,
                     const SearchBounds& bounds = {});

/// Grid search followed by compass-search refinement within `budget` loss
/// evaluations. Pure: identical inputs give identical results. Ties are
/// broken by lowest loss, then smallest alpha, then smallest beta.
CalibrationResult calibrate(const ScenarioParams& params, const YearSeries& prices,
                            const YearSeries& subsidies, const CalibrationTarget& target,
                            int budget = kDefaultBudget, const CalibrationOptions& options = {});

/// Evenly spaced points in log space from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace pvabm::calibration
