#include <gtest/gtest.h>

#include <cmath>

#include "gamehedge/error.hpp"
#include "gamehedge/fixed_point.hpp"
#include "gamehedge/hedge_sim.hpp"
#include "gamehedge/price_path.hpp"

using namespace gamehedge;

namespace {

HedgeScenario scenario_for(std::string_view name, double strike, Method method) {
    ScenarioOverrides o;
    o.strike = strike;
    o.method = method;
    return to_scenario(fixture(name), o);
}

bool is_multiple(double value, double grain) {
    const double q = value / grain;
    return std::abs(q - std::round(q)) < 1e-9;
}

}  // namespace

TEST(FixedPoint, HalfEvenDivision) {
    using fixed::div_round_half_even;
    EXPECT_EQ(div_round_half_even(3, 2), 2);
    EXPECT_EQ(div_round_half_even(5, 2), 2);
    EXPECT_EQ(div_round_half_even(7, 2), 4);
    EXPECT_EQ(div_round_half_even(-3, 2), -2);
    EXPECT_EQ(div_round_half_even(-5, 2), -2);
    EXPECT_EQ(div_round_half_even(10, 3), 3);
    EXPECT_EQ(div_round_half_even(-11, 3), -4);
    EXPECT_EQ(div_round_half_even(0, 7), 0);
}

TEST(FixedPoint, Scaling) {
    EXPECT_EQ(fixed::round_half_even(2.5), 2);
    EXPECT_EQ(fixed::round_half_even(3.5), 4);
    EXPECT_EQ(fixed::round_half_even(-2.5), -2);
    EXPECT_EQ(fixed::round_half_even(447.918), 448);
    EXPECT_EQ(fixed::to_micro(48.12), 48120000);
    EXPECT_EQ(fixed::to_micro(57.25), 57250000);
    EXPECT_EQ(fixed::to_nano(0.05), 50000000);
}

TEST(Method, Names) {
    EXPECT_EQ(parse_method("game"), Method::GamePricing);
    EXPECT_EQ(parse_method("bs"), Method::BlackScholes);
    EXPECT_EQ(to_string(Method::GamePricing), "game");
    EXPECT_THROW(parse_method("binomial"), Error);
}

TEST(Scenario, ValidationAndTiming) {
    HedgeScenario s = scenario_for("S1", 50, Method::GamePricing);
    EXPECT_EQ(s.weeks, 20);
    EXPECT_DOUBLE_EQ(s.params_at(0).T, 20.0 / 52.0);
    EXPECT_EQ(s.params_at(20).T, 0.0);
    EXPECT_EQ(s.params_at(7).S, 51.87);
    s.prices.pop_back();
    EXPECT_THROW(s.validate(), Error);
    s = scenario_for("S1", 50, Method::GamePricing);
    s.shares = 0;
    EXPECT_THROW(s.validate(), Error);
}

TEST(WeeklyDelta, InceptionAndMaturity) {
    const HedgeScenario game = scenario_for("S1", 50, Method::GamePricing);
    const HedgeScenario bs = scenario_for("S1", 50, Method::BlackScholes);
    EXPECT_NEAR(weekly_delta(game, 0).delta, 0.448, 5e-4);
    EXPECT_NEAR(weekly_delta(bs, 0).delta, 0.522, 5e-4);
    const WeeklyQuote last = weekly_delta(game, 20);
    EXPECT_DOUBLE_EQ(last.u, 7.25);
    EXPECT_EQ(last.delta, 1.0);
    EXPECT_EQ(weekly_delta(scenario_for("S2", 50, Method::GamePricing), 20).delta, 0.0);
    EXPECT_THROW(weekly_delta(game, 21), Error);
}

TEST(WeeklyDelta, WorthlessGameQuoteIsZero) {
    const HedgeScenario s = scenario_for("S1", 65, Method::GamePricing);
    const WeeklyQuote q = weekly_delta(s, 15);  // S = 51.88, five weeks left
    EXPECT_EQ(q.u, 0.0);
    EXPECT_EQ(q.delta, 0.0);
}

TEST(Ledger, HandComputedStub) {
    HedgeScenario s;
    s.prices = {50.0, 51.0, 52.0};
    s.strike = 50.0;
    s.sigma = 0.2;
    s.rate = 0.05;
    s.weeks = 2;
    const HedgeReport r = run_ledger(s, [](const MarketParams&) { return WeeklyQuote{1.0, 0.5}; });
    ASSERT_EQ(r.rows.size(), 3u);
    // 50,000 shares at $50 = $2,500,000; interest 2500 * 0.05 / 52 = 2.4038 -> 2.4.
    EXPECT_DOUBLE_EQ(r.rows[0].trade_cost, 2500.0);
    EXPECT_DOUBLE_EQ(r.rows[0].interest_accrued, 2.4);
    EXPECT_DOUBLE_EQ(r.rows[1].shares_traded, 0.0);
    EXPECT_DOUBLE_EQ(r.rows[1].cumulative_cost, 2502.4);
    // Maturity in the money: buy the other 50,000 at $52, then deliver at $50.
    EXPECT_DOUBLE_EQ(r.rows[2].delta_rounded, 1.0);
    EXPECT_DOUBLE_EQ(r.rows[2].trade_cost, 2600.0);
    EXPECT_DOUBLE_EQ(r.rows[2].cumulative_cost, 5104.8);
    EXPECT_EQ(r.final_cost, 5104800 - 5000000);
}

TEST(Ledger, TiesRoundToEven) {
    HedgeScenario s;
    s.prices = {50.0, 40.0};
    s.strike = 45.0;
    s.sigma = 0.2;
    s.rate = 0.0;
    s.weeks = 1;
    s.shares = 1000;
    // 0.003 * 1000 = 3 shares at $50 = $150 -> 1.5 units of $100 -> 2.
    auto r = run_ledger(s, [](const MarketParams&) { return WeeklyQuote{1.0, 0.003}; });
    EXPECT_DOUBLE_EQ(r.rows[0].trade_cost, 0.2);
    // 0.005 * 1000 = 5 shares at $50 = $250 -> 2.5 units -> 2.
    r = run_ledger(s, [](const MarketParams&) { return WeeklyQuote{1.0, 0.005}; });
    EXPECT_DOUBLE_EQ(r.rows[0].trade_cost, 0.2);
}

TEST(Ledger, StubSourceIgnoresMethod) {
    HedgeScenario game = scenario_for("S2", 50, Method::GamePricing);
    HedgeScenario bs = game;
    bs.method = Method::BlackScholes;
    const QuoteSource stub = [](const MarketParams& p) { return WeeklyQuote{p.S / 10.0, 0.437}; };
    const HedgeReport a = run_ledger(game, stub);
    const HedgeReport b = run_ledger(bs, stub);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.final_cost, b.final_cost);
    EXPECT_EQ(a.method, Method::GamePricing);
    EXPECT_EQ(b.method, Method::BlackScholes);
}

TEST(Ledger, ErrorsAreWeekStamped) {
    const HedgeScenario s = scenario_for("S1", 50, Method::GamePricing);
    const QuoteSource failing = [](const MarketParams& p) {
        if (p.S == 50.25) throw Error(ErrorCode::NoConvergence, "stalled");
        return WeeklyQuote{1.0, 0.5};
    };
    try {
        run_ledger(s, failing);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
        EXPECT_NE(std::string(e.what()).find("week 3"), std::string::npos) << e.what();
    }
}

TEST(Ledger, NeverInTheMoneyPath) {
    HedgeScenario s;
    s.prices.assign(21, 30.0);
    s.strike = 50.0;
    s.sigma = 0.2;
    s.rate = 0.05;
    s.weeks = 20;
    const HedgeReport game = run_ledger(s);
    for (const auto& row : game.rows) EXPECT_EQ(row.delta_rounded, 0.0);
    EXPECT_EQ(game.final_cost, 0);
    s.method = Method::BlackScholes;
    const HedgeReport bs = run_ledger(s);
    for (const auto& row : bs.rows) EXPECT_LE(row.delta_rounded, 0.002);
    EXPECT_LE(std::abs(bs.final_cost), 1000);
}

class FixtureLedgers : public ::testing::TestWithParam<std::tuple<const char*, double, Method>> {};

TEST_P(FixtureLedgers, InvariantsHold) {
    const auto [name, strike, method] = GetParam();
    const HedgeScenario s = scenario_for(name, strike, method);
    const HedgeReport r = run_ledger(s);
    ASSERT_EQ(r.rows.size(), 21u);

    for (const auto& row : r.rows) {
        EXPECT_TRUE(is_multiple(row.trade_cost, 0.1)) << row.week;
        EXPECT_TRUE(is_multiple(row.interest_accrued, 0.1)) << row.week;
        EXPECT_TRUE(is_multiple(row.delta_rounded, 0.001)) << row.week;
        EXPECT_GE(row.delta_rounded, 0.0);
        EXPECT_LE(row.delta_rounded, 1.0);
        EXPECT_DOUBLE_EQ(row.shares_held, row.delta_rounded * s.shares);
    }

    const LedgerRow& last = r.rows.back();
    const double final_price = s.prices.back();
    const double settled = last.cumulative_cost * 1000.0;
    if (final_price > strike) {
        EXPECT_EQ(last.delta_rounded, 1.0);
        EXPECT_NEAR(static_cast<double>(r.final_cost), settled - s.shares * strike, 0.5);
    } else {
        EXPECT_EQ(last.delta_rounded, 0.0);
        EXPECT_NEAR(static_cast<double>(r.final_cost), settled, 0.5);
    }

    EXPECT_EQ(run_ledger(s), r);  // bit-for-bit deterministic
}

INSTANTIATE_TEST_SUITE_P(
    Fixtures, FixtureLedgers,
    ::testing::Values(std::tuple{"S1", 50.0, Method::GamePricing}, std::tuple{"S1", 65.0, Method::BlackScholes},
                      std::tuple{"S2", 50.0, Method::GamePricing}, std::tuple{"S3", 45.0, Method::GamePricing},
                      std::tuple{"S3", 35.0, Method::BlackScholes}),
    [](const auto& info) {
        return std::string(std::get<0>(info.param)) + "_K" +
               std::to_string(static_cast<int>(std::get<1>(info.param))) + "_" +
               std::string(to_string(std::get<2>(info.param)));
    });

TEST(Ledger, QuotedFixtureCosts) {
    EXPECT_NEAR(run_ledger(scenario_for("S1", 50, Method::GamePricing)).final_cost, 287500, 100);
    EXPECT_NEAR(run_ledger(scenario_for("S1", 50, Method::BlackScholes)).final_cost, 263300, 100);
}

TEST(Compare, Headlines) {
    const MethodComparison s1 = compare_methods(scenario_for("S1", 50, Method::GamePricing));
    EXPECT_NEAR(100.0 * s1.relative_difference, 9.2, 0.1);
    const MethodComparison s2 = compare_methods(scenario_for("S2", 50, Method::GamePricing));
    EXPECT_NEAR(100.0 * s2.relative_difference, -3.4, 0.1);
    const MethodComparison s3 = compare_methods(scenario_for("S3", 45, Method::GamePricing));
    EXPECT_NEAR(100.0 * s3.relative_difference, -82.7, 0.5);
}

TEST(Compare, DeepInTheMoneyCostsAgree) {
    for (const auto& [name, strike] : {std::pair{"S1", 35.0}, {"S2", 35.0}, {"S3", 25.0}}) {
        const MethodComparison c = compare_methods(scenario_for(name, strike, Method::GamePricing));
        EXPECT_LE(std::abs(c.relative_difference), 1e-3) << name;
    }
}
