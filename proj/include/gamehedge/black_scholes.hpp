#pragma once

#include "gamehedge/model.hpp"

namespace gamehedge {

struct BsResult {
    double price_bar = 0.0;
    double delta_bar = 0.0;
    double gamma_bar = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Closed-form European call: price S N(d1) - K e^{-rT} N(d2), delta N(d1),
/// gamma e^{-d1^2/2} / (S sigma sqrt(2 pi T)).
/// Throws Error{DegenerateMaturity} for T == 0.
BsResult bs_price(const MarketParams& params);

}  // namespace gamehedge
