#include "pvabm/economics.hpp"

#include <cmath>

namespace pvabm::economics {

namespace {

void check_rate(double discount_rate) {
    if (!(discount_rate > -1.0) || !std::isfinite(discount_rate)) {
        throw ValidationError("discount_rate", "must be finite and > -1");
    }
}

// Same operations, in the same order, as net_present_value over
// SavingsSeries::constant(amount, horizon_years).
double constant_npv(double amount, int horizon_years, double discount_rate) {
    const double growth = 1.0 + discount_rate;
    double factor = 1.0;
    double total = 0.0;
    for (int t = 0; t <= horizon_years; ++t) {
        total += amount / factor;
        factor *= growth;
    }
    return total;
}

}  // namespace

SavingsSeries::SavingsSeries(std::vector<MoneyEur> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("savings", "needs at least the t = 0 term");
    }
}

SavingsSeries SavingsSeries::constant(MoneyEur amount, int horizon_years) {
    if (horizon_years < 0) throw ValidationError("horizon_years", "must be >= 0");
    return SavingsSeries(std::vector<MoneyEur>(static_cast<std::size_t>(horizon_years) + 1, amount));
}

MoneyEur annual_savings(double generation_kwh, MoneyEur energy_price, MoneyEur pv_cost,
                        double maintenance_rate) {
    if (!(generation_kwh >= 0.0) || !std::isfinite(generation_kwh)) {
        throw ValidationError("annual_generation_kwh", "must be finite and >= 0");
    }
    if (energy_price.value() < 0.0) throw ValidationError("energy_price", "must be >= 0");
    if (!(maintenance_rate >= 0.0 && maintenance_rate < 1.0)) {
        throw ValidationError("maintenance_rate", "must be in [0, 1)");
    }
    return MoneyEur(generation_kwh * energy_price.value() - maintenance_rate * pv_cost.value(),
                    "annual_savings");
}

MoneyEur net_present_value(const SavingsSeries& savings, double discount_rate) {
    check_rate(discount_rate);
    const double growth = 1.0 + discount_rate;
    double factor = 1.0;
    double total = 0.0;
    for (const MoneyEur r : savings.values()) {
        total += r.value() / factor;
        factor *= growth;
    }
    return MoneyEur(total, "net_present_value");
}

double annuity_factor(int horizon_years, double discount_rate) {
    return net_present_value(SavingsSeries::constant(MoneyEur(1.0), horizon_years), discount_rate)
        .value();
}

MoneyEur economic_utility(MoneyEur npv, MoneyEur initial_investment, MoneyEur subsidy) {
    return MoneyEur(npv.value() - initial_investment.value() + subsidy.value(), "economic_utility");
}

MoneyEur utility_for_cost(MoneyEur pv_cost, const ScenarioParams& params, MoneyEur energy_price,
                          MoneyEur subsidy) {
    const MoneyEur yearly =
        annual_savings(params.annual_generation_kwh, energy_price, pv_cost, params.maintenance_rate);
    if (params.horizon_years < 0) throw ValidationError("horizon_years", "must be >= 0");
    check_rate(params.discount_rate);
    const MoneyEur npv(constant_npv(yearly.value(), params.horizon_years, params.discount_rate),
                       "net_present_value");
    return economic_utility(npv, pv_cost, subsidy);
}

MoneyEur agent_utility(const AgentState& agent, const ScenarioParams& params,
                       MoneyEur energy_price, MoneyEur subsidy) {
    return utility_for_cost(agent.pv_cost, params, energy_price, subsidy);
}

}  // namespace pvabm::economics
