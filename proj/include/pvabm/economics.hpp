#pragma once

// Cash-flow side of the adoption decision: yearly savings, their discounted
// sum, and the resulting economic utility of installing a PV system.

#include <span>
#include <vector>

#include "pvabm/types.hpp"

namespace pvabm::economics {

/// Savings R_t for t = 0..n. Length is always horizon + 1.
class SavingsSeries {
public:
    explicit SavingsSeries(std::vector<MoneyEur> values);
    /// Same amount in every period t = 0..horizon_years.
    static SavingsSeries constant(MoneyEur amount, int horizon_years);

    int horizon_years() const noexcept { return static_cast<int>(values_.size()) - 1; }
    std::span<const MoneyEur> values() const noexcept { return values_; }

private:
    std::vector<MoneyEur> values_;
};

/// generation * price - maintenance_rate * pv_cost. Negative when upkeep
/// exceeds what the panels save.
MoneyEur annual_savings(double generation_kwh, MoneyEur energy_price, MoneyEur pv_cost,
                        double maintenance_rate);

/// Sum of R_t / (1 + i)^t, accumulated in ascending t.
MoneyEur net_present_value(const SavingsSeries& savings, double discount_rate);

/// sum_{t=0}^{n} (1 + i)^-t, the NPV of one euro per period.
double annuity_factor(int horizon_years, double discount_rate);

MoneyEur economic_utility(MoneyEur npv, MoneyEur initial_investment, MoneyEur subsidy);

/// Utility for one farmer deciding in a year with the given price and
/// subsidy. Savings are held at this year's price over the whole horizon.
MoneyEur agent_utility(const AgentState& agent, const ScenarioParams& params,
                       MoneyEur energy_price, MoneyEur subsidy);

/// Utility for a farmer with the given installation cost.
MoneyEur utility_for_cost(MoneyEur pv_cost, const ScenarioParams& params, MoneyEur energy_price,
                          MoneyEur subsidy);

}  // namespace pvabm::economics
