#pragma once

#include "gamehedge/model.hpp"
#include "gamehedge/quadrature.hpp"

namespace gamehedge {

// Game pricing: the call price u and the growth-optimal proportion t_u solve
//
//   exp(E[log(a t/u - t + 1)]) = e^{rT},    E[(a - u) / beta] = 0,
//
// with beta = a t - u t + u and the expectation taken under the log-return
// density p(x).

struct SolverConfig {
    int max_iterations = 100;
    /// Newton loop stops once |du| + |dt| falls below this.
    double step_tolerance = 1e-12;
    /// Options with expected payoff below this are worthless.
    double tiny_price_floor = 1e-12;
    double initial_t = 0.5;
    /// The loop stops only when the step is short and |f|, |g| are below this.
    double residual_tolerance = 1e-9;
    QuadratureConfig quadrature{};

    void validate() const;
};

struct GameSolution {
    double u = 0.0;
    double t_u = 0.0;
    int iterations = 0;
    double residual_f = 0.0;
    double residual_g = 0.0;
};

struct Residuals {
    double f = 0.0;
    double g = 0.0;
};

/// Partial derivatives used by the Newton step. ft is held at zero.
struct Jacobian {
    double fu = 0.0;
    double ft = 0.0;
    double gu = 0.0;
    double gt = 0.0;
};

struct GameGreeks {
    double delta = 0.0;
    double gamma = 0.0;
    double w = 0.0;
    double dw_ds = 0.0;
    double dtu_ds = 0.0;
};

/// E = integral of a(x) p(x) dx, the undiscounted expected payoff.
double expected_payoff(const MarketParams& params, const QuadratureConfig& cfg = {});

Residuals residuals(const MarketParams& params, const BetaContext& ctx, const QuadratureConfig& cfg = {});

/// fu = (f + e^{rT}) E[-a t / (beta u)], ft = 0, gu = -E[a / beta^2],
/// gt = -E[(a - u)^2 / beta^2]. `f` is the residual at the same point.
Jacobian jacobian(const MarketParams& params, const BetaContext& ctx, double f, const QuadratureConfig& cfg = {});

/// Damped Newton-Raphson from u = E/2, t = initial_t.
///
/// Throws Error{TrivialOption} when E or any iterate u drops below the
/// floor, Error{SingularJacobian} when the 2x2 step has no solution and
/// Error{NoConvergence} when the iteration cap is hit with a residual above
/// tolerance.
GameSolution solve_price(const MarketParams& params, const SolverConfig& cfg = {});

/// W = integral above the kink of e^x / beta(x) p(x) dx.
double compute_w(const MarketParams& params, const GameSolution& sol, const QuadratureConfig& cfg = {});

/// Delta = u W e^{rT}.
double game_delta(const MarketParams& params, const GameSolution& sol, const QuadratureConfig& cfg = {});

/// Sensitivity of the optimal proportion to the stock price, obtained by
/// differentiating E[1/beta] = 1/u. Throws Error{DegenerateDenominator} when
/// E[(a - u)/beta^2] vanishes.
double dtu_ds(const MarketParams& params, const GameSolution& sol, double delta, const QuadratureConfig& cfg = {});

/// dW/dS by the Leibniz rule: boundary term at the kink minus the interior
/// derivative of 1/beta.
double dw_ds(const MarketParams& params, const GameSolution& sol, double delta, double dtu,
             const QuadratureConfig& cfg = {});

/// Gamma = u W^2 e^{2rT} + u e^{rT} dW/dS.
double game_gamma(const MarketParams& params, const GameSolution& sol, const QuadratureConfig& cfg = {});

/// Delta, gamma and every intermediate in one pass.
GameGreeks game_greeks(const MarketParams& params, const GameSolution& sol, const QuadratureConfig& cfg = {});

/// Minimum exercise period the solver accepts (a tenth of a week).
inline constexpr double kMinSolverMaturity = 1.0 / 520.0;

}  // namespace gamehedge
