#include "gamehedge/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "gamehedge/error.hpp"

namespace gamehedge {
namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    double abs_value;  // integral of |f|, for the roundoff floor

    bool operator<(const Panel& other) const { return error < other.error; }
};

double checked(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "integrand is not finite at x = " << x;
        throw Error(ErrorCode::NonFinite, os.str());
    }
    return y;
}

// QK15 with the QUADPACK error scaling: the raw |K - G| difference is
// sharpened by (200 |K - G| / resasc)^1.5 and floored at the roundoff level.
Panel kronrod15(const Integrand& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, 15> values{};
    values[14] = checked(f, center);
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        values[2 * i] = checked(f, center - dx);
        values[2 * i + 1] = checked(f, center + dx);
    }

    double kronrod = values[14] * kKronrodWeights[7];
    double gauss = values[14] * kGaussWeights[3];
    double abs_sum = std::abs(values[14]) * kKronrodWeights[7];
    for (std::size_t i = 0; i < 7; ++i) {
        const double pair = values[2 * i] + values[2 * i + 1];
        kronrod += kKronrodWeights[i] * pair;
        abs_sum += kKronrodWeights[i] * (std::abs(values[2 * i]) + std::abs(values[2 * i + 1]));
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }

    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(values[14] - mean);
    for (std::size_t i = 0; i < 7; ++i) {
        asc += kKronrodWeights[i] * (std::abs(values[2 * i] - mean) + std::abs(values[2 * i + 1] - mean));
    }

    const double width = std::abs(half);
    const double resasc = asc * width;
    const double resabs = abs_sum * width;
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);

    return Panel{lo, hi, kronrod * half, err, resabs};
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must be positive");
    if (!(abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
    if (!(truncation_width >= 8.0)) throw Error(ErrorCode::InvalidArgument, "truncation_width must be >= 8");
    if (max_subdivisions < 1) throw Error(ErrorCode::InvalidArgument, "max_subdivisions must be >= 1");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

QuadratureResult integrate_panels(const Integrand& f, std::span<const double> breakpoints,
                                  const QuadratureConfig& cfg) {
    if (breakpoints.size() < 2 || breakpoints.front() == breakpoints.back()) return {};

    std::priority_queue<Panel> panels;
    double total = 0.0;
    double error = 0.0;
    double abs_total = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const Panel p = kronrod15(f, breakpoints[i], breakpoints[i + 1]);
        total += p.value;
        error += p.error;
        abs_total += p.abs_value;
        panels.push(p);
    }
    int subdivisions = static_cast<int>(panels.size());
    const int budget = cfg.max_subdivisions + subdivisions - 1;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    auto tolerance = [&] {
        return std::max({cfg.abs_tol, cfg.rel_tol * std::abs(total), 100.0 * eps * abs_total});
    };

    while (error > tolerance()) {
        if (subdivisions >= budget) {
            std::ostringstream os;
            os << "quadrature on [" << breakpoints.front() << ", " << breakpoints.back() << "] hit "
               << cfg.max_subdivisions << " subdivisions with error estimate " << error;
            throw Error(ErrorCode::SubdivisionLimit, os.str());
        }
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Panel left = kronrod15(f, worst.lo, mid);
        const Panel right = kronrod15(f, mid, worst.hi);

        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_total += left.abs_value + right.abs_value - worst.abs_value;
        panels.push(left);
        panels.push(right);
        ++subdivisions;
    }

    // Re-sum to shed the drift of the incremental updates.
    total = 0.0;
    error = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    return {total, error, subdivisions};
}

QuadratureResult integrate_interval(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg) {
    const std::array<double, 2> ends{lo, hi};
    return integrate_panels(f, ends, cfg);
}

std::vector<double> graded_toward_left(double lo, double hi) {
    // Widths halve toward lo, down to ~1e-16 of the interval; integrands of
    // the form y / (t y + u)^2 spread their mass over every dyadic scale of
    // y = x - lo when u is tiny.
    constexpr int kLevels = 52;
    std::vector<double> points;
    points.reserve(kLevels + 2);
    points.push_back(lo);
    for (int j = kLevels; j >= 1; --j) {
        const double x = lo + std::ldexp(hi - lo, -j);
        if (x > points.back()) points.push_back(x);
    }
    points.push_back(hi);
    return points;
}

namespace {

// Upper truncation point. A kink deep in the right tail would leave a thin
// sliver of the payoff region whose truncated remainder is not negligible
// relative to it, so the domain then reaches half a width past the kink.
double upper_limit(double mean, double sd, std::optional<double> kink, const QuadratureConfig& cfg) {
    const double hi = mean + cfg.truncation_width * sd;
    if (!kink) return hi;
    return std::max(hi, *kink + 0.5 * cfg.truncation_width * sd);
}

}  // namespace

double integrate_against_density(const Integrand& f, const MarketParams& params, std::optional<double> kink,
                                 const QuadratureConfig& cfg) {
    const double sd = density_stddev(params);
    if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateMaturity, "density needs sigma * sqrt(T) > 0");

    const double mean = density_mean(params);
    const double lo = mean - cfg.truncation_width * sd;
    const double hi = upper_limit(mean, sd, kink, cfg);
    auto weighted = [&](double x) { return f(x) * density(x, params); };

    if (kink && *kink > lo && *kink < hi) {
        return integrate_interval(weighted, lo, *kink, cfg).value +
               integrate_panels(weighted, graded_toward_left(*kink, hi), cfg).value;
    }
    return integrate_interval(weighted, lo, hi, cfg).value;
}

namespace {

struct Support {
    double lo;
    double hi;
    double kink;
};

Support support_of(const MarketParams& params, const QuadratureConfig& cfg) {
    const double sd = density_stddev(params);
    if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateMaturity, "density needs sigma * sqrt(T) > 0");
    const double mean = density_mean(params);
    const double kink = kink_abscissa(params);
    return {mean - cfg.truncation_width * sd, upper_limit(mean, sd, kink, cfg), kink};
}

// Integrates over [kink, hi] in the offset variable, graded toward zero.
double integrate_offsets(const KinkIntegrand& f, const MarketParams& params, const Support& s,
                         const QuadratureConfig& cfg) {
    auto weighted = [&](double above) {
        const double x = s.kink + above;
        return f(x, above) * density(x, params);
    };
    return integrate_panels(weighted, graded_toward_left(0.0, s.hi - s.kink), cfg).value;
}

double integrate_plain(const KinkIntegrand& f, const MarketParams& params, const Support& s, double lo,
                       const QuadratureConfig& cfg) {
    auto weighted = [&](double x) { return f(x, x - s.kink) * density(x, params); };
    return integrate_interval(weighted, lo, s.hi, cfg).value;
}

}  // namespace

double integrate_around_kink(const KinkIntegrand& f, const MarketParams& params, const QuadratureConfig& cfg) {
    const Support s = support_of(params, cfg);
    if (s.kink <= s.lo || s.kink >= s.hi) return integrate_plain(f, params, s, s.lo, cfg);
    auto below = [&](double x) { return f(x, x - s.kink) * density(x, params); };
    return integrate_interval(below, s.lo, s.kink, cfg).value + integrate_offsets(f, params, s, cfg);
}

double integrate_above_kink(const KinkIntegrand& f, const MarketParams& params, const QuadratureConfig& cfg) {
    const Support s = support_of(params, cfg);
    if (s.kink >= s.hi) return 0.0;
    if (s.kink <= s.lo) return integrate_plain(f, params, s, s.lo, cfg);
    return integrate_offsets(f, params, s, cfg);
}

}  // namespace gamehedge
