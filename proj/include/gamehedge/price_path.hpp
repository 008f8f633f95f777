#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gamehedge/hedge_sim.hpp"

namespace gamehedge {

/// Parsed price path file:
///
///     # strike=50 sigma=0.2 rate=0.05 shares=100000 method=game
///     week,price
///     0,49.00
///     1,48.12
///
/// Metadata comments are optional; any key may be supplied by flags instead.
struct PricePathFile {
    std::vector<double> prices;
    std::optional<double> strike;
    std::optional<double> sigma;
    std::optional<double> rate;
    std::optional<std::int64_t> shares;
    std::optional<Method> method;
};

/// Throws Error{Parse} naming the offending line.
PricePathFile parse_price_path(std::istream& in);
PricePathFile load_price_path(const std::string& path);

/// Writes the scenario in the format parse_price_path reads, metadata included.
void write_price_path(std::ostream& out, const HedgeScenario& scenario);

/// Overrides from the command line win over file metadata. Throws
/// Error{InvalidArgument} if strike, sigma or rate is still missing.
struct ScenarioOverrides {
    std::optional<double> strike;
    std::optional<double> sigma;
    std::optional<double> rate;
    std::optional<std::int64_t> shares;
    std::optional<Method> method;
};

HedgeScenario to_scenario(const PricePathFile& file, const ScenarioOverrides& overrides = {});

/// Built-in weekly paths S1, S2 (K = 50, sigma = 0.2, r = 0.05) and
/// S3 (K = 35, sigma = 0.18, r = 0.1), 20 weeks, 100000 shares.
PricePathFile fixture(std::string_view name);

std::vector<std::string> fixture_names();

}  // namespace gamehedge
