#include <doctest.h>

#include <cmath>

#include "pvabm/adoption.hpp"
#include "pvabm/calibration.hpp"
#include "test_helpers.hpp"

using namespace pvabm;
using namespace pvabm::calibration;
using pvabm::testing::study_prices;
using pvabm::testing::study_subsidies;

namespace {

CalibrationTarget synthesize(const ScenarioParams& base, double alpha, double beta) {
    ScenarioParams p = base;
    p.alpha = alpha;
    p.beta = beta;
    CalibrationTarget t;
    for (const auto& r : adoption::run_simulation(p, study_prices(), study_subsidies()).records) {
        t.observations.emplace_back(r.year, r.cumulative_adopters);
    }
    return t;
}

double zero_prediction_loss(const CalibrationTarget& t) {
    double s = 0.0;
    for (const auto& [y, v] : t.observations) s += v * v;
    return s;
}

CalibrationTarget single_2022(double value) {
    CalibrationTarget t;
    t.observations = {{2022, value}};
    return t;
}

}  // namespace

TEST_CASE("log_grid spans the bounds evenly in log space") {
    const auto g = log_grid(1e-3, 100.0, 20);
    REQUIRE(g.size() == 20);
    CHECK(g.front() == 1e-3);
    CHECK(g.back() == 100.0);
    const double ratio = g[1] / g[0];
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == doctest::Approx(ratio));
    CHECK(log_grid(2.0, 5.0, 1) == std::vector<double>{2.0});
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), ValidationError);
}

TEST_CASE("evaluate_loss") {
    const ScenarioParams p;
    SUBCASE("zero at the generating parameters") {
        const CalibrationTarget t = synthesize(p, 1.5, 0.02);
        CHECK(evaluate_loss({1.5, 0.02}, p, study_prices(), study_subsidies(), t) == 0.0);
        CHECK(evaluate_loss({1.5, 0.021}, p, study_prices(), study_subsidies(), t) > 0.0);
    }
    SUBCASE("near-zero adoption against 441") {
        const double loss =
            evaluate_loss({1.0, 1e-5}, p, study_prices(), study_subsidies(), single_2022(441));
        CHECK(loss <= 441.0 * 441.0);
        CHECK(loss >= 436.0 * 436.0);
    }
    SUBCASE("absolute error") {
        CalibrationTarget t = single_2022(441);
        t.loss = Loss::absolute_error;
        const double sq = evaluate_loss({1.0, 1e-5}, p, study_prices(), study_subsidies(),
                                        single_2022(441));
        const double abs = evaluate_loss({1.0, 1e-5}, p, study_prices(), study_subsidies(), t);
        CHECK(abs * abs == doctest::Approx(sq));
    }
    SUBCASE("invariant when utilities scale by k and alpha by 1/k") {
        const CalibrationTarget t = single_2022(441);
        const double k = 3.0;
        ScenarioParams scaled = p;
        scaled.pv_cost_min *= k;
        scaled.pv_cost_max *= k;
        scaled.annual_generation_kwh *= k;
        std::vector<std::pair<int, MoneyEur>> subs;
        for (const auto& [y, v] : study_subsidies().entries()) subs.emplace_back(y, v * k);
        const double base = evaluate_loss({1.2, 0.004}, p, study_prices(), study_subsidies(), t);
        const double other =
            evaluate_loss({1.2 / k, 0.004}, scaled, study_prices(), YearSeries(subs), t);
        CHECK(other == doctest::Approx(base).epsilon(1e-9));
    }
    SUBCASE("candidate must lie inside the bounds") {
        const CalibrationTarget t = single_2022(441);
        CHECK_THROWS_AS(evaluate_loss({200.0, 0.01}, p, study_prices(), study_subsidies(), t),
                        ValidationError);
        CHECK_THROWS_AS(evaluate_loss({1.0, 1e-6}, p, study_prices(), study_subsidies(), t),
                        ValidationError);
    }
}

TEST_CASE("CalibrationTarget validation") {
    const ScenarioParams p;
    CHECK_THROWS_AS(CalibrationTarget{}.validate(p), ValidationError);
    CHECK_THROWS_AS(single_2022(-1).validate(p), ValidationError);
    CHECK_THROWS_AS(single_2022(18001).validate(p), ValidationError);
    CalibrationTarget t;
    t.observations = {{2030, 5.0}};
    CHECK_THROWS_AS(t.validate(p), ValidationError);
    CHECK_THROWS_AS(calibrate(p, study_prices(), study_subsidies(), CalibrationTarget{}),
                    ValidationError);
}

TEST_CASE("calibrate recovers synthetic parameters") {
    const ScenarioParams p;
    const CalibrationTarget t = synthesize(p, 1.5, 0.02);
    const CalibrationResult r = calibrate(p, study_prices(), study_subsidies(), t);
    CHECK(r.beta == doctest::Approx(0.02).epsilon(0.05));
    CHECK(r.achieved_loss < 1e-4 * zero_prediction_loss(t));
    CHECK(r.achieved_loss <= r.best_grid_loss);
    CHECK(r.evaluations <= kDefaultBudget);
    MESSAGE("alpha=" << r.alpha << " beta=" << r.beta << " loss=" << r.achieved_loss
                     << " evals=" << r.evaluations << " converged=" << r.converged);
}

TEST_CASE("calibrate against a single 2022 observation") {
    const ScenarioParams p;
    const CalibrationResult r =
        calibrate(p, study_prices(), study_subsidies(), single_2022(441));
    ScenarioParams fitted = p;
    fitted.alpha = r.alpha;
    fitted.beta = r.beta;
    const double final_count =
        adoption::run_simulation(fitted, study_prices(), study_subsidies())
            .records.back()
            .cumulative_adopters;
    CHECK(std::abs(final_count - 441.0) <= 1.0);
    CHECK(r.achieved_loss <= r.best_grid_loss);
}

TEST_CASE("calibrate with a grid-sized budget returns the best grid point") {
    const ScenarioParams p;
    const CalibrationTarget t = single_2022(441);
    CalibrationOptions opt;
    const CalibrationResult r =
        calibrate(p, study_prices(), study_subsidies(), t, opt.grid_size(), opt);
    CHECK(r.evaluations == opt.grid_size());
    CHECK_FALSE(r.converged);
    CHECK(r.alpha == r.best_grid_point.alpha);
    CHECK(r.beta == r.best_grid_point.beta);
    CHECK(r.achieved_loss == r.best_grid_loss);

    // brute force over the same grid with the documented tie-break
    double best = INFINITY, ba = 0, bb = 0;
    for (double a : log_grid(1e-3, 100, 20)) {
        for (double b : log_grid(1e-5, 1, 20)) {
            const double l = evaluate_loss({a, b}, p, study_prices(), study_subsidies(), t);
            if (l < best || (l == best && (a < ba || (a == ba && b < bb)))) {
                best = l;
                ba = a;
                bb = b;
            }
        }
    }
    CHECK(r.alpha == ba);
    CHECK(r.beta == bb);
    CHECK(r.achieved_loss == best);

    CHECK_THROWS_AS(calibrate(p, study_prices(), study_subsidies(), t, opt.grid_size() - 1),
                    ValidationError);
}

TEST_CASE("calibrate is deterministic regardless of threads") {
    const ScenarioParams p;
    const CalibrationTarget t = single_2022(441);
    CalibrationOptions one;
    one.threads = 1;
    CalibrationOptions many;
    many.threads = 8;
    const auto a = calibrate(p, study_prices(), study_subsidies(), t, 3000, one);
    const auto b = calibrate(p, study_prices(), study_subsidies(), t, 3000, many);
    CHECK(a.alpha == b.alpha);
    CHECK(a.beta == b.beta);
    CHECK(a.achieved_loss == b.achieved_loss);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("calibrate fails when no grid point has a finite loss") {
    ScenarioParams p;
    p.annual_generation_kwh = 1e308;  // savings overflow for every candidate
    CHECK_THROWS_AS(calibrate(p, study_prices(), study_subsidies(), single_2022(441)),
                    CalibrationError);
}
