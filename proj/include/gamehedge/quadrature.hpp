#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gamehedge/model.hpp"

namespace gamehedge {

struct QuadratureConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-15;
    /// Half-width of the truncated domain in standard deviations.
    double truncation_width = 12.0;
    /// Panel budget for each smooth piece.
    int max_subdivisions = 200;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Standard normal CDF, absolute error below 1e-15.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [lo, hi].
///
/// Panels are bisected in order of decreasing error estimate until the summed
/// estimate falls below max(abs_tol, rel_tol |I|) or the roundoff floor of the
/// rule. Throws Error{SubdivisionLimit} when the panel budget runs out and
/// Error{NonFinite} if f returns NaN or infinity.
QuadratureResult integrate_interval(const Integrand& f, double lo, double hi,
                                    const QuadratureConfig& cfg);

/// Same, starting from the panels delimited by `breakpoints` (ascending).
/// The subdivision budget counts bisections beyond the initial panels.
QuadratureResult integrate_panels(const Integrand& f, std::span<const double> breakpoints,
                                  const QuadratureConfig& cfg);

/// Breakpoints on [lo, hi] whose widths halve toward lo.
std::vector<double> graded_toward_left(double lo, double hi);

/// Integral of f(x) p(x) over the truncated support of the log-return
/// density, split at `kink` when it lies inside the domain. The piece above
/// the kink starts from panels graded toward it. A kink more than half a
/// truncation width above the mean stretches the domain to keep the region
/// above it resolved.
double integrate_against_density(const Integrand& f, const MarketParams& params,
                                 std::optional<double> kink, const QuadratureConfig& cfg);

/// Integrand that also receives above = x - kink. Above the kink the offset
/// is the integration variable, so it is exact even where x itself cannot
/// resolve it; integrands should take the payoff from it.
using KinkIntegrand = std::function<double(double x, double above)>;

/// Integral of f p over the truncated support, split at the payoff kink.
double integrate_around_kink(const KinkIntegrand& f, const MarketParams& params, const QuadratureConfig& cfg);

/// Same, restricted to the part above the kink.
double integrate_above_kink(const KinkIntegrand& f, const MarketParams& params, const QuadratureConfig& cfg);

}  // namespace gamehedge
