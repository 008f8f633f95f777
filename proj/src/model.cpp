#include "gamehedge/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gamehedge/error.hpp"

namespace gamehedge {

void MarketParams::validate() const {
    if (!(S > 0.0) || !std::isfinite(S)) throw Error(ErrorCode::InvalidArgument, "stock price must be positive");
    if (!(K > 0.0) || !std::isfinite(K)) throw Error(ErrorCode::InvalidArgument, "strike must be positive");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw Error(ErrorCode::InvalidArgument, "volatility must be positive");
    if (!std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "rate must be finite");
    if (!(T >= 0.0) || !std::isfinite(T)) throw Error(ErrorCode::InvalidArgument, "exercise period must be >= 0");
}

MarketParams MarketParams::with_stock(double stock) const {
    MarketParams p = *this;
    p.S = stock;
    return p;
}

void BetaContext::validate() const {
    if (!(u > 0.0) || !std::isfinite(u)) throw Error(ErrorCode::InvalidArgument, "price u must be positive");
    if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "proportion t must lie in [0, 1)");
}

double payoff(double x, const MarketParams& params) { return payoff_at_offset(x - kink_abscissa(params), params); }

double payoff_at_offset(double above, const MarketParams& params) {
    // S e^{x+rT} - K == K (e^{x-kink} - 1); expm1 keeps full precision in
    // the thin layer just above the kink.
    if (above < 0.0) return 0.0;
    return params.K * std::expm1(above);
}

double beta(double x, const MarketParams& params, const BetaContext& ctx) {
    return beta_of_payoff(payoff(x, params), ctx);
}

double beta_of_payoff(double a, const BetaContext& ctx) { return a * ctx.t + ctx.u * (1.0 - ctx.t); }

double kink_abscissa(const MarketParams& params) {
    return std::log(params.K / params.S) - params.r * params.T;
}

double density_mean(const MarketParams& params) { return -0.5 * params.sigma * params.sigma * params.T; }

double density_stddev(const MarketParams& params) { return params.sigma * std::sqrt(params.T); }

double density(double x, const MarketParams& params) {
    const double sd = density_stddev(params);
    const double z = (x - density_mean(params)) / sd;
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * sd);
}

std::optional<std::string> conditioning_warning(const MarketParams& params) {
    if (params.K / params.S < 0.1) {
        std::ostringstream os;
        os << "warning: K/S = " << params.K / params.S
           << " is below 0.1; solver conditioning is untested this deep in the money";
        return os.str();
    }
    return std::nullopt;
}

}  // namespace gamehedge
