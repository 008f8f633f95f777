#include "gamehedge/hedge_sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "gamehedge/black_scholes.hpp"
#include "gamehedge/error.hpp"
#include "gamehedge/fixed_point.hpp"

namespace gamehedge {
namespace {

using fixed::Wide;

constexpr double kWeeksPerYear = 52.0;
constexpr Wide kMicro = 1'000'000;
constexpr Wide kNano = 1'000'000'000;

WeeklyQuote maturity_quote(double price, double strike) {
    if (price > strike) return {price - strike, 1.0};
    return {0.0, 0.0};
}

Error stamp(const Error& err, int week) {
    std::ostringstream os;
    os << "week " << week << ": " << err.what();
    return Error(err.code(), os.str());
}

}  // namespace

std::string_view to_string(Method method) noexcept {
    return method == Method::GamePricing ? "game" : "bs";
}

Method parse_method(std::string_view text) {
    if (text == "game") return Method::GamePricing;
    if (text == "bs") return Method::BlackScholes;
    throw Error(ErrorCode::InvalidArgument, "method must be 'game' or 'bs', got '" + std::string(text) + "'");
}

void HedgeScenario::validate() const {
    if (weeks < 0) throw Error(ErrorCode::InvalidArgument, "weeks must be >= 0");
    if (prices.size() != static_cast<std::size_t>(weeks) + 1) {
        std::ostringstream os;
        os << "price path has " << prices.size() << " entries, expected weeks + 1 = " << weeks + 1;
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !std::isfinite(prices[i])) {
            std::ostringstream os;
            os << "price at week " << i << " must be positive";
            throw Error(ErrorCode::InvalidArgument, os.str());
        }
    }
    if (shares <= 0) throw Error(ErrorCode::InvalidArgument, "shares must be positive");
    params_at(0).validate();
}

MarketParams HedgeScenario::params_at(int week) const {
    return MarketParams{prices.at(static_cast<std::size_t>(week)), strike, sigma, rate,
                        static_cast<double>(weeks - week) / kWeeksPerYear};
}

QuoteSource quote_source(Method method, const SolverConfig& cfg) {
    if (method == Method::BlackScholes) {
        return [](const MarketParams& params) {
            const BsResult bs = bs_price(params);
            return WeeklyQuote{bs.price_bar, bs.delta_bar};
        };
    }
    return [cfg](const MarketParams& params) {
        try {
            const GameSolution sol = solve_price(params, cfg);
            return WeeklyQuote{sol.u, game_delta(params, sol, cfg.quadrature)};
        } catch (const Error& err) {
            if (err.code() == ErrorCode::TrivialOption) return WeeklyQuote{0.0, 0.0};
            throw;
        }
    };
}

WeeklyQuote weekly_delta(const HedgeScenario& scenario, int week, const SolverConfig& cfg) {
    if (week < 0 || week > scenario.weeks) throw Error(ErrorCode::InvalidArgument, "week out of range");
    const MarketParams params = scenario.params_at(week);
    if (params.T <= 0.0) return maturity_quote(params.S, params.K);
    return quote_source(scenario.method, cfg)(params);
}

HedgeReport run_ledger(const HedgeScenario& scenario, const SolverConfig& cfg) {
    return run_ledger(scenario, quote_source(scenario.method, cfg));
}

HedgeReport run_ledger(const HedgeScenario& scenario, const QuoteSource& source) {
    scenario.validate();
    const int weeks = scenario.weeks;

    // Quotes depend only on (S_j, T_j), so they can be priced concurrently.
    std::vector<std::future<WeeklyQuote>> pending;
    pending.reserve(static_cast<std::size_t>(weeks) + 1);
    for (int j = 0; j <= weeks; ++j) {
        const MarketParams params = scenario.params_at(j);
        if (params.T > 0.0) {
            pending.push_back(std::async(std::launch::async, [&source, params] { return source(params); }));
        } else {
            std::promise<WeeklyQuote> done;
            done.set_value(maturity_quote(params.S, params.K));
            pending.push_back(done.get_future());
        }
    }
    std::vector<WeeklyQuote> quotes;
    quotes.reserve(pending.size());
    for (int j = 0; j <= weeks; ++j) {
        try {
            quotes.push_back(pending[static_cast<std::size_t>(j)].get());
        } catch (const Error& err) {
            // Drain the rest so no task outlives the source it references.
            for (auto& f : pending) if (f.valid()) f.wait();
            throw stamp(err, j);
        }
    }

    const Wide shares = scenario.shares;
    const Wide rate_nano = fixed::to_nano(scenario.rate);
    Wide held_milli = 0;    // thousandths of a share
    Wide cost_units = 0;    // units of $100
    Wide interest_units = 0;
    Wide delta_milli = 0;

    HedgeReport report;
    report.method = scenario.method;
    report.rows.reserve(quotes.size());

    for (int j = 0; j <= weeks; ++j) {
        const WeeklyQuote& quote = quotes[static_cast<std::size_t>(j)];
        const double price = scenario.prices[static_cast<std::size_t>(j)];
        const Wide price_micro = fixed::to_micro(price);

        delta_milli = fixed::round_half_even(1000.0 * quote.delta);
        const Wide target_milli = shares * delta_milli;
        const Wide traded_milli = target_milli - held_milli;
        held_milli = target_milli;

        // milli-shares * micro-dollars = 1e-9 dollars; one unit is $100.
        const Wide trade_units = fixed::div_round_half_even(traded_milli * price_micro, 100 * kNano);
        cost_units += trade_units + interest_units;
        interest_units = fixed::div_round_half_even(cost_units * rate_nano, 52 * kNano);

        LedgerRow row;
        row.week = j;
        row.price = price;
        row.option_value = quote.u;
        row.delta_rounded = static_cast<double>(delta_milli) / 1000.0;
        row.shares_held = static_cast<double>(held_milli) / 1000.0;
        row.shares_traded = static_cast<double>(traded_milli) / 1000.0;
        row.trade_cost = static_cast<double>(trade_units) / 10.0;
        row.cumulative_cost = static_cast<double>(cost_units) / 10.0;
        row.interest_accrued = static_cast<double>(interest_units) / 10.0;
        report.rows.push_back(row);
    }

    // Settlement: deliver the held shares at the strike (or mark them at the
    // final price if it is lower) and buy any shortfall at market.
    const Wide final_micro = fixed::to_micro(scenario.prices.back());
    const Wide strike_micro = fixed::to_micro(scenario.strike);
    Wide total_nano = cost_units * 100 * kNano;
    total_nano -= delta_milli * shares * std::min(strike_micro, final_micro);
    total_nano += (1000 - delta_milli) * shares * std::max<Wide>(final_micro - strike_micro, 0);
    report.final_cost = static_cast<std::int64_t>(fixed::div_round_half_even(total_nano, kNano));
    return report;
}

MethodComparison compare_methods(const HedgeScenario& scenario, const SolverConfig& cfg) {
    HedgeScenario game = scenario;
    game.method = Method::GamePricing;
    HedgeScenario bs = scenario;
    bs.method = Method::BlackScholes;

    auto game_run = std::async(std::launch::async, [&] { return run_ledger(game, cfg); });
    const HedgeReport bs_report = run_ledger(bs, cfg);
    const HedgeReport game_report = game_run.get();

    MethodComparison cmp;
    cmp.game_cost = game_report.final_cost;
    cmp.bs_cost = bs_report.final_cost;
    cmp.relative_difference =
        static_cast<double>(cmp.game_cost - cmp.bs_cost) / static_cast<double>(cmp.bs_cost);
    return cmp;
}

}  // namespace gamehedge
