#pragma once

#include <cstdint>

namespace gamehedge::fixed {

__extension__ using Wide = __int128;

/// Nearest integer to num / den, ties to even (den > 0).
Wide div_round_half_even(Wide num, Wide den);

/// Nearest integer to x, ties to even.
std::int64_t round_half_even(double x);

/// x scaled by 10^6 and rounded; exact for decimal inputs with <= 6 places.
std::int64_t to_micro(double x);

/// r scaled by 10^9 and rounded.
std::int64_t to_nano(double x);

}  // namespace gamehedge::fixed
