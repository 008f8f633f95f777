#pragma once

// Reference implementations that share no code with the library: a Taylor
// series for the normal CDF, composite Simpson quadrature on fixed grids and
// nested bisection for the game price. Slow but transparent.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

namespace oracle {

struct Market {
    double S, K, sigma, r, T;
};

// N(x) = 1/2 + phi(x) * sum x^{2n+1} / (2n+1)!!, summed in long double.
inline double normal_cdf(double x) {
    const long double xl = x;
    long double term = xl;
    long double sum = xl;
    for (int n = 1; n < 400; ++n) {
        term *= xl * xl / (2 * n + 1);
        sum += term;
        if (std::fabs(term) < 1e-30L * std::fabs(sum)) break;
    }
    const long double phi = std::exp(-0.5L * xl * xl) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
    return static_cast<double>(0.5L + phi * sum);
}

inline double kink(const Market& m) { return std::log(m.K / m.S) - m.r * m.T; }

inline double density(double x, const Market& m) {
    const double v = m.sigma * m.sigma * m.T;
    const double z = x + 0.5 * v;
    return std::exp(-z * z / (2.0 * v)) / std::sqrt(2.0 * std::numbers::pi * v);
}

inline double payoff(double x, const Market& m) { return std::max(m.S * std::exp(x + m.r * m.T) - m.K, 0.0); }

inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
    if (!(hi > lo)) return 0.0;
    if (n % 2) ++n;
    const double h = (hi - lo) / n;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return sum * h / 3.0;
}

// Integral of f p over mean +- 12 sd, split at the kink.
inline double expect(const std::function<double(double)>& f, const Market& m, int n = 200000) {
    const double sd = m.sigma * std::sqrt(m.T);
    const double mean = -0.5 * m.sigma * m.sigma * m.T;
    const double lo = mean - 12.0 * sd;
    const double hi = mean + 12.0 * sd;
    const double k = std::clamp(kink(m), lo, hi);
    auto g = [&](double x) { return f(x) * density(x, m); };
    return simpson(g, lo, k, n) + simpson(g, k, hi, n);
}

inline double expect_above(const std::function<double(double)>& f, const Market& m, int n = 200000) {
    const double sd = m.sigma * std::sqrt(m.T);
    const double mean = -0.5 * m.sigma * m.sigma * m.T;
    const double hi = mean + 12.0 * sd;
    const double k = std::max(kink(m), mean - 12.0 * sd);
    return simpson([&](double x) { return f(x) * density(x, m); }, k, hi, n);
}

inline double beta(double x, const Market& m, double u, double t) { return payoff(x, m) * t + u * (1.0 - t); }

inline double g_residual(const Market& m, double u, double t, int n) {
    return expect([&](double x) { return (payoff(x, m) - u) / beta(x, m, u, t); }, m, n);
}

inline double f_residual(const Market& m, double u, double t, int n) {
    return std::exp(expect([&](double x) { return std::log(beta(x, m, u, t) / u); }, m, n)) -
           std::exp(m.r * m.T);
}

template <class F>
double bisect(F&& sign_fn, double lo, double hi, int steps) {
    // sign_fn(lo) > 0 > sign_fn(hi)
    for (int i = 0; i < steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        (sign_fn(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// g(u, .) falls from (E - u)/u > 0 at t = 0 to -inf as t -> 1; f(., t*(u))
// falls as u grows. Bisection on g nested inside bisection on f.
inline std::pair<double, double> game_root(const Market& m, int n = 20000, int steps = 60) {
    const double E = expect([&](double x) { return payoff(x, m); }, m, n);
    auto t_star = [&](double u) {
        return bisect([&](double t) { return g_residual(m, u, t, n); }, 0.0, 1.0 - 1e-12, steps);
    };
    const double u = bisect([&](double uu) { return f_residual(m, uu, t_star(uu), n); }, 1e-9 * E, E, steps);
    return {u, t_star(u)};
}

}  // namespace oracle
