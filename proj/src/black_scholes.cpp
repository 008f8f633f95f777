#include "gamehedge/black_scholes.hpp"

#include <cmath>
#include <numbers>

#include "gamehedge/error.hpp"
#include "gamehedge/quadrature.hpp"

namespace gamehedge {

BsResult bs_price(const MarketParams& params) {
    params.validate();
    if (params.T == 0.0) throw Error(ErrorCode::DegenerateMaturity, "Black-Scholes needs T > 0; use the payoff");

    const double vol = params.sigma * std::sqrt(params.T);
    BsResult res;
    res.d1 = (std::log(params.S / params.K) + (params.r + 0.5 * params.sigma * params.sigma) * params.T) / vol;
    res.d2 = res.d1 - vol;
    res.price_bar =
        params.S * normal_cdf(res.d1) - params.K * std::exp(-params.r * params.T) * normal_cdf(res.d2);
    res.delta_bar = normal_cdf(res.d1);
    res.gamma_bar = std::exp(-0.5 * res.d1 * res.d1) /
                    (params.S * params.sigma * std::sqrt(2.0 * std::numbers::pi * params.T));
    return res;
}

}  // namespace gamehedge
