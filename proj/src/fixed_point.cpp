#include "gamehedge/fixed_point.hpp"

#include <cmath>

namespace gamehedge::fixed {

Wide div_round_half_even(Wide num, Wide den) {
    const bool negative = num < 0;
    const Wide mag = negative ? -num : num;
    Wide q = mag / den;
    const Wide rem = mag % den;
    if (2 * rem > den || (2 * rem == den && q % 2 == 1)) ++q;
    return negative ? -q : q;
}

std::int64_t round_half_even(double x) {
    const double fl = std::floor(x);
    const double diff = x - fl;
    double r = fl;
    if (diff > 0.5 || (diff == 0.5 && std::fmod(fl, 2.0) != 0.0)) r = fl + 1.0;
    return static_cast<std::int64_t>(r);
}

std::int64_t to_micro(double x) { return std::llround(x * 1e6); }

std::int64_t to_nano(double x) { return std::llround(x * 1e9); }

}  // namespace gamehedge::fixed
