#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pvabm/economics.hpp"

using namespace pvabm;
using namespace pvabm::economics;

TEST_CASE("annual_savings") {
    CHECK(annual_savings(0, MoneyEur(0.20), MoneyEur(10000), 0.02).value() ==
          doctest::Approx(-200.0));
    CHECK(annual_savings(6000, MoneyEur(0.20), MoneyEur(10000), 0.02).value() ==
          doctest::Approx(1000.0));
    CHECK(annual_savings(6000, MoneyEur(0.15), MoneyEur(5000), 0.02).value() ==
          doctest::Approx(800.0));
    CHECK_THROWS_AS(annual_savings(-1, MoneyEur(0.2), MoneyEur(1), 0.02), ValidationError);
    CHECK_THROWS_AS(annual_savings(1, MoneyEur(-0.2), MoneyEur(1), 0.02), ValidationError);
    CHECK_THROWS_AS(annual_savings(1, MoneyEur(0.2), MoneyEur(1), 1.0), ValidationError);
}

TEST_CASE("SavingsSeries has horizon + 1 terms") {
    CHECK(SavingsSeries::constant(MoneyEur(5), 20).values().size() == 21);
    CHECK(SavingsSeries::constant(MoneyEur(5), 0).values().size() == 1);
    CHECK_THROWS_AS(SavingsSeries({}), ValidationError);
    CHECK_THROWS_AS(SavingsSeries::constant(MoneyEur(5), -1), ValidationError);
}

TEST_CASE("net_present_value examples") {
    CHECK(net_present_value(SavingsSeries::constant(MoneyEur(0), 20), 0.04).value() == 0.0);
    CHECK(net_present_value(SavingsSeries({MoneyEur(100), MoneyEur(100)}), 0.04).value() ==
          doctest::Approx(196.15384615384613).epsilon(1e-12));
    const double npv = net_present_value(SavingsSeries::constant(MoneyEur(1000), 20), 0.04).value();
    CHECK(std::abs(npv - 14590.33) <= 0.01);
    CHECK_THROWS_AS(net_present_value(SavingsSeries::constant(MoneyEur(1), 2), -1.0),
                    ValidationError);
}

TEST_CASE("net_present_value properties against oracles") {
    std::mt19937_64 gen(20230922);
    std::uniform_real_distribution<double> amount(-5000, 5000), rate(0.0001, 0.3);
    std::uniform_int_distribution<int> horizon(0, 40);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = horizon(gen);
        std::vector<double> raw(static_cast<std::size_t>(n) + 1);
        std::vector<MoneyEur> r;
        for (auto& x : raw) {
            x = amount(gen);
            r.emplace_back(x);
        }
        const SavingsSeries s(r);

        // zero rate: plain sum
        double plain = 0.0;
        for (double x : raw) plain += x;
        CHECK(net_present_value(s, 0.0).value() == doctest::Approx(plain).epsilon(1e-12));

        const double i = rate(gen);
        const double got = net_present_value(s, i).value();
        const long double want = oracle::npv_pow(raw, i);
        double magnitude = 0.0;
        for (double x : raw) magnitude += std::abs(x);
        CHECK(std::abs(got - static_cast<double>(want)) <= 1e-12 * magnitude);

        const double c = std::abs(amount(gen)) + 1.0;
        const double annuity = net_present_value(SavingsSeries::constant(MoneyEur(c), n), i).value();
        CHECK(annuity == doctest::Approx(oracle::annuity_npv(c, n, i)).epsilon(1e-9));

        // non-increasing in the rate for non-negative savings
        const double i2 = i + rate(gen);
        CHECK(net_present_value(SavingsSeries::constant(MoneyEur(c), n), i2).value() <= annuity);
    }
}

TEST_CASE("economic_utility") {
    CHECK(economic_utility(MoneyEur(10000), MoneyEur(10000), MoneyEur(0)).value() == 0.0);
    CHECK(economic_utility(MoneyEur(14590.33), MoneyEur(12000), MoneyEur(2400)).value() ==
          doctest::Approx(4990.33));
    CHECK(economic_utility(MoneyEur(0), MoneyEur(15000), MoneyEur(3500)).value() == -11500.0);
}

TEST_CASE("agent_utility") {
    ScenarioParams p;
    SUBCASE("single term, subsidy covers cost") {
        p.horizon_years = 0;
        p.annual_generation_kwh = 0;
        const AgentState a{0, MoneyEur(8000), std::nullopt};
        CHECK(agent_utility(a, p, MoneyEur(0.2), MoneyEur(8000)).value() ==
              doctest::Approx(-p.maintenance_rate * 8000));
    }
    SUBCASE("chained annuity example") {
        const AgentState a{0, MoneyEur(10000), std::nullopt};
        const double u = agent_utility(a, p, MoneyEur(0.20), MoneyEur(2400)).value();
        const double want = oracle::annuity_npv(1000, 20, 0.04) - 10000 + 2400;
        CHECK(std::abs(u - 6990.33) <= 0.01);
        CHECK(u == doctest::Approx(want).epsilon(1e-12));
    }
    SUBCASE("cheap and expensive agents differ by cost plus discounted upkeep") {
        const AgentState cheap{0, MoneyEur(5000), std::nullopt};
        const AgentState dear{1, MoneyEur(15000), std::nullopt};
        const double diff = agent_utility(cheap, p, MoneyEur(0.18), MoneyEur(2000)).value() -
                            agent_utility(dear, p, MoneyEur(0.18), MoneyEur(2000)).value();
        const double af = oracle::annuity_npv(1.0, 20, 0.04);
        CHECK(diff == doctest::Approx(10000 + 0.02 * 10000 * af).epsilon(1e-12));
    }
    SUBCASE("affine in pv_cost with slope -(1 + m * annuity factor)") {
        const double af = annuity_factor(p.horizon_years, p.discount_rate);
        const double slope = -(1.0 + p.maintenance_rate * af);
        const double u0 = utility_for_cost(MoneyEur(5000), p, MoneyEur(0.15), MoneyEur(1500)).value();
        for (double cost : {6000.0, 9000.0, 12345.0, 15000.0}) {
            const double u = utility_for_cost(MoneyEur(cost), p, MoneyEur(0.15), MoneyEur(1500)).value();
            CHECK(u == doctest::Approx(u0 + slope * (cost - 5000)).epsilon(1e-12));
        }
    }
}

TEST_CASE("utility_for_cost is bit-identical to the explicit savings-series route") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> cost(5000, 15000), price(0.0, 0.4), rate(-0.05, 0.2);
    std::uniform_int_distribution<int> horizon(0, 40);
    for (int i = 0; i < 300; ++i) {
        ScenarioParams p;
        p.discount_rate = rate(gen);
        p.horizon_years = horizon(gen);
        const MoneyEur c(cost(gen)), e(price(gen)), s(2000);
        const MoneyEur yearly = annual_savings(p.annual_generation_kwh, e, c, p.maintenance_rate);
        const MoneyEur npv =
            net_present_value(SavingsSeries::constant(yearly, p.horizon_years), p.discount_rate);
        CHECK(utility_for_cost(c, p, e, s) == economic_utility(npv, c, s));
    }
}
