#pragma once

#include <optional>
#include <string>

namespace gamehedge {

/// One pricing problem: stock price factor, strike, volatility, rate and
/// exercise period. T is in years; T == 0 is the maturity case that only the
/// payoff and the hedge ledger accept.
struct MarketParams {
    double S = 0.0;
    double K = 0.0;
    double sigma = 0.0;
    double r = 0.0;
    double T = 0.0;

    /// Throws Error{InvalidArgument} unless S, K, sigma > 0, T >= 0 and r is finite.
    void validate() const;

    /// Same parameters with the stock price replaced; used by bumped greeks.
    MarketParams with_stock(double stock) const;
};

/// Investor state inside the growth-optimal equations: candidate price and
/// the proportion of capital staked on the option.
struct BetaContext {
    double u = 0.0;
    double t = 0.0;

    /// Requires u > 0 and 0 <= t < 1.
    void validate() const;
};

/// Call payoff a(x) = max(S e^{x+rT} - K, 0) as a function of the log-return x.
double payoff(double x, const MarketParams& params);

/// Same payoff, addressed by the offset x - kink so that points a few ulps
/// above the kink keep full relative precision.
double payoff_at_offset(double above, const MarketParams& params);

/// Wealth factor after one bet: a(x) t - u t + u. Bounded below by u (1 - t).
double beta(double x, const MarketParams& params, const BetaContext& ctx);
double beta_of_payoff(double a, const BetaContext& ctx);

/// Abscissa log(K/S) - rT where the payoff leaves zero.
double kink_abscissa(const MarketParams& params);

/// Mean and standard deviation of the log-return density p(x).
double density_mean(const MarketParams& params);
double density_stddev(const MarketParams& params);

/// p(x) = exp(-(x + s^2 T/2)^2 / (2 s^2 T)) / (sqrt(2 pi T) s).
double density(double x, const MarketParams& params);

/// Diagnostic for strikes far into the left tail (K/S < 0.1), where the
/// solver has not been characterised.
std::optional<std::string> conditioning_warning(const MarketParams& params);

}  // namespace gamehedge
