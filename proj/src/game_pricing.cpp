#include "gamehedge/game_pricing.hpp"

#include <cmath>
#include <sstream>

#include "gamehedge/error.hpp"

namespace gamehedge {
namespace {

void require_solvable(const MarketParams& params) {
    params.validate();
    if (params.T < kMinSolverMaturity) {
        std::ostringstream os;
        os << "game pricing needs T >= " << kMinSolverMaturity << " years, got " << params.T;
        throw Error(ErrorCode::DegenerateMaturity, os.str());
    }
}

BetaContext context_of(const GameSolution& sol) {
    BetaContext ctx{sol.u, sol.t_u};
    ctx.validate();
    return ctx;
}

}  // namespace

void SolverConfig::validate() const {
    if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
    if (!(step_tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "step_tolerance must be positive");
    if (!(initial_t > 0.0 && initial_t < 1.0)) throw Error(ErrorCode::InvalidArgument, "initial_t must lie in (0, 1)");
    if (!(residual_tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "residual_tolerance must be positive");
    quadrature.validate();
}

double expected_payoff(const MarketParams& params, const QuadratureConfig& cfg) {
    params.validate();
    return integrate_around_kink([&](double, double above) { return payoff_at_offset(above, params); }, params,
                                 cfg);
}

Residuals residuals(const MarketParams& params, const BetaContext& ctx, const QuadratureConfig& cfg) {
    ctx.validate();

    const double log_growth = integrate_around_kink(
        [&](double, double above) {
            const double ratio = beta_of_payoff(payoff_at_offset(above, params), ctx) / ctx.u;
            if (!(ratio > 0.0)) throw Error(ErrorCode::NonFinite, "log argument became nonpositive");
            return std::log(ratio);
        },
        params, cfg);
    const double g = integrate_around_kink(
        [&](double, double above) {
            const double a = payoff_at_offset(above, params);
            return (a - ctx.u) / beta_of_payoff(a, ctx);
        },
        params, cfg);

    return {std::exp(log_growth) - std::exp(params.r * params.T), g};
}

Jacobian jacobian(const MarketParams& params, const BetaContext& ctx, double f, const QuadratureConfig& cfg) {
    ctx.validate();
    const auto& [u, t] = ctx;

    Jacobian jac;
    jac.fu = (f + std::exp(params.r * params.T)) *
             integrate_around_kink(
                 [&](double, double above) {
                     const double a = payoff_at_offset(above, params);
                     return -a * t / (beta_of_payoff(a, ctx) * u);
                 },
                 params, cfg);
    jac.ft = 0.0;
    jac.gu = -integrate_around_kink(
        [&](double, double above) {
            const double a = payoff_at_offset(above, params);
            const double b = beta_of_payoff(a, ctx);
            return a / (b * b);
        },
        params, cfg);
    jac.gt = -integrate_around_kink(
        [&](double, double above) {
            const double a = payoff_at_offset(above, params);
            const double b = beta_of_payoff(a, ctx);
            return (a - u) * (a - u) / (b * b);
        },
        params, cfg);
    return jac;
}

GameSolution solve_price(const MarketParams& params, const SolverConfig& cfg) {
    require_solvable(params);
    cfg.validate();

    const double expected = expected_payoff(params, cfg.quadrature);
    if (expected < cfg.tiny_price_floor) {
        std::ostringstream os;
        os << "option is worthless: expected payoff " << expected << " below floor " << cfg.tiny_price_floor;
        throw Error(ErrorCode::TrivialOption, os.str());
    }

    double u = expected / 2.0;
    double t = cfg.initial_t;
    int iterations = 0;

    for (; iterations < cfg.max_iterations; ++iterations) {
        if (u < cfg.tiny_price_floor) {
            std::ostringstream os;
            os << "option is worthless: price iterate " << u << " fell below floor " << cfg.tiny_price_floor
               << " after " << iterations << " iterations";
            throw Error(ErrorCode::TrivialOption, os.str());
        }
        const BetaContext ctx{u, t};
        const Residuals res = residuals(params, ctx, cfg.quadrature);
        const Jacobian jac = jacobian(params, ctx, res.f, cfg.quadrature);

        const double det = jac.fu * jac.gt - jac.ft * jac.gu;
        const double du = (-res.f * jac.gt + jac.ft * res.g) / det;
        const double dt = (-jac.fu * res.g + res.f * jac.gu) / det;
        if (det == 0.0 || !std::isfinite(du) || !std::isfinite(dt)) {
            std::ostringstream os;
            os << "Newton system is singular at u = " << u << ", t = " << t;
            throw Error(ErrorCode::SingularJacobian, os.str());
        }
        // A short step alone can mask stagnation near the floor; stop only
        // once the current point also certifies.
        const bool certified = std::abs(res.f) <= cfg.residual_tolerance && std::abs(res.g) <= cfg.residual_tolerance;
        if (std::abs(du) + std::abs(dt) < cfg.step_tolerance && certified) break;

        u += du;
        t += dt;
        if (u < 0.0) u = (u - du) / 2.0;
        if (t < 0.0) t = (t - dt) / 2.0;
        if (t >= 1.0) t = ((t - dt) + 1.0) / 2.0;
    }

    GameSolution sol{u, t, iterations, 0.0, 0.0};
    if (!(u > 0.0) || !(t > 0.0 && t < 1.0)) {
        std::ostringstream os;
        os << "solver left the admissible region: u = " << u << ", t = " << t;
        throw Error(ErrorCode::NoConvergence, os.str());
    }
    const Residuals cert = residuals(params, BetaContext{u, t}, cfg.quadrature);
    sol.residual_f = cert.f;
    sol.residual_g = cert.g;
    if (!(std::abs(cert.f) <= cfg.residual_tolerance && std::abs(cert.g) <= cfg.residual_tolerance)) {
        std::ostringstream os;
        os << "no convergence after " << iterations << " iterations: |f| = " << std::abs(cert.f)
           << ", |g| = " << std::abs(cert.g);
        throw Error(ErrorCode::NoConvergence, os.str());
    }
    return sol;
}

double compute_w(const MarketParams& params, const GameSolution& sol, const QuadratureConfig& cfg) {
    const BetaContext ctx = context_of(sol);
    return integrate_above_kink(
        [&](double x, double above) { return std::exp(x) / beta_of_payoff(payoff_at_offset(above, params), ctx); },
        params, cfg);
}

double game_delta(const MarketParams& params, const GameSolution& sol, const QuadratureConfig& cfg) {
    return sol.u * compute_w(params, sol, cfg) * std::exp(params.r * params.T);
}

double dtu_ds(const MarketParams& params, const GameSolution& sol, double delta, const QuadratureConfig& cfg) {
    const BetaContext ctx = context_of(sol);
    const double growth = std::exp(params.r * params.T);
    const auto& [u, t] = ctx;

    const double inv_beta_sq = integrate_around_kink(
        [&](double, double above) {
            const double b = beta_of_payoff(payoff_at_offset(above, params), ctx);
            return 1.0 / (b * b);
        },
        params, cfg);
    const double tail = integrate_above_kink(
        [&](double x, double above) {
            const double b = beta_of_payoff(payoff_at_offset(above, params), ctx);
            return std::exp(x) / (b * b);
        },
        params, cfg);
    const double denominator = -integrate_around_kink(
        [&](double, double above) {
            const double a = payoff_at_offset(above, params);
            const double b = beta_of_payoff(a, ctx);
            return (a - u) / (b * b);
        },
        params, cfg);

    if (std::abs(denominator) < 1e-14) {
        throw Error(ErrorCode::DegenerateDenominator, "E[(a - u)/beta^2] vanished in dt_u/dS");
    }
    // delta stands in for u W e^{rT}, so W e^{rT} / u == delta / u^2.
    const double numerator = (1.0 - t) * delta * inv_beta_sq + t * growth * tail - delta / (u * u);
    return numerator / denominator;
}

double dw_ds(const MarketParams& params, const GameSolution& sol, double delta, double dtu,
             const QuadratureConfig& cfg) {
    const BetaContext ctx = context_of(sol);
    const double kink = kink_abscissa(params);
    const double growth = std::exp(params.r * params.T);
    const auto& [u, t] = ctx;
    const double S = params.S;
    const double K = params.K;

    const double boundary = K / (u * (1.0 - t) * S * S * growth) * density(kink, params);
    const double interior = integrate_above_kink(
        [&](double x, double above) {
            const double forward = std::exp(x) * growth;
            const double a = payoff_at_offset(above, params);
            const double b = beta_of_payoff(a, ctx);
            // S e^{x+rT} - K is the payoff itself above the kink.
            const double dbeta = t * forward + (a - u) * dtu + (1.0 - t) * delta;
            return dbeta / (b * b) * std::exp(x);
        },
        params, cfg);
    return boundary - interior;
}

GameGreeks game_greeks(const MarketParams& params, const GameSolution& sol, const QuadratureConfig& cfg) {
    const double growth = std::exp(params.r * params.T);
    GameGreeks greeks;
    greeks.w = compute_w(params, sol, cfg);
    greeks.delta = sol.u * greeks.w * growth;
    greeks.dtu_ds = dtu_ds(params, sol, greeks.delta, cfg);
    greeks.dw_ds = dw_ds(params, sol, greeks.delta, greeks.dtu_ds, cfg);
    greeks.gamma = sol.u * greeks.w * greeks.w * growth * growth + sol.u * growth * greeks.dw_ds;
    return greeks;
}

double game_gamma(const MarketParams& params, const GameSolution& sol, const QuadratureConfig& cfg) {
    return game_greeks(params, sol, cfg).gamma;
}

}  // namespace gamehedge
