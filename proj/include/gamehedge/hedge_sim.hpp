#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "gamehedge/game_pricing.hpp"
#include "gamehedge/model.hpp"

namespace gamehedge {

enum class Method { GamePricing, BlackScholes };

std::string_view to_string(Method method) noexcept;
/// Accepts "game" or "bs"; throws Error{InvalidArgument} otherwise.
Method parse_method(std::string_view text);

/// Weekly delta-hedging experiment on a short call covering `shares` shares.
struct HedgeScenario {
    /// Weekly observations, index 0 is inception; size weeks + 1.
    std::vector<double> prices;
    double strike = 0.0;
    double sigma = 0.0;
    double rate = 0.0;
    int weeks = 0;
    std::int64_t shares = 100000;
    Method method = Method::GamePricing;

    void validate() const;
    /// Market parameters at `week`, with T = (weeks - week) / 52 years.
    MarketParams params_at(int week) const;
};

struct WeeklyQuote {
    double u = 0.0;
    double delta = 0.0;
};

// Money columns are in thousands of dollars, as in the reference table.
struct LedgerRow {
    int week = 0;
    double price = 0.0;
    double option_value = 0.0;
    double delta_rounded = 0.0;
    double shares_held = 0.0;
    double shares_traded = 0.0;
    double trade_cost = 0.0;
    double cumulative_cost = 0.0;
    /// Interest charged on the cumulative cost; added in the next week.
    double interest_accrued = 0.0;

    bool operator==(const LedgerRow&) const = default;
};

struct HedgeReport {
    std::vector<LedgerRow> rows;
    /// Total cost of hedging after terminal settlement, whole dollars.
    std::int64_t final_cost = 0;
    Method method = Method::GamePricing;

    bool operator==(const HedgeReport&) const = default;
};

struct MethodComparison {
    std::int64_t game_cost = 0;
    std::int64_t bs_cost = 0;
    /// (game - bs) / bs.
    double relative_difference = 0.0;
};

/// Quote source for weeks before maturity.
using QuoteSource = std::function<WeeklyQuote(const MarketParams&)>;

QuoteSource quote_source(Method method, const SolverConfig& cfg = {});

/// Option value and unrounded delta at `week`. At maturity the option is
/// worth max(S - K, 0) with delta 1 in the money and 0 otherwise. A
/// worthless (TrivialOption) game price maps to u = 0, delta = 0.
WeeklyQuote weekly_delta(const HedgeScenario& scenario, int week, const SolverConfig& cfg = {});

/// Replays the weekly rebalancing ledger and terminal settlement.
///
/// Arithmetic is exact: holdings in thousandths of a share, prices in
/// micro-dollars and costs in units of $100. Trade values and interest are
/// rounded to $100 with ties to even. A failure at any week is rethrown
/// with the week number in the message.
HedgeReport run_ledger(const HedgeScenario& scenario, const SolverConfig& cfg = {});

/// Ledger driven by an arbitrary quote source; the maturity row and all
/// bookkeeping are shared with run_ledger.
HedgeReport run_ledger(const HedgeScenario& scenario, const QuoteSource& source);

MethodComparison compare_methods(const HedgeScenario& scenario, const SolverConfig& cfg = {});

}  // namespace gamehedge
