#pragma once

#include <cmath>
#include <functional>

#include "omega/context.hpp"
#include "omega/numerics.hpp"
#include "omega/solve.hpp"
#include "omega/valuation.hpp"

namespace omega::testing {

/// Reference compound Poisson model with a Brownian part: psi(1) = 0.02.
inline LevyModel reference_model() { return LevyModel(0.3, 0.2, HyperExpJumps{0.6, {{1.0, 1.0}}}); }

inline Context reference_context(double r = 0.05) { return make_context(reference_model(), r, 1.0, 10.0); }

/// Two-phase model, used where a single exponential phase could hide indexing bugs.
inline LevyModel two_phase_model() { return LevyModel(0.25, 0.25, HyperExpJumps{0.8, {{0.3, 0.7}, {0.7, 2.5}}}); }

/// Bounded variation (sigma = 0) version of the reference model.
inline LevyModel bv_model() { return LevyModel(0.3, 0.0, HyperExpJumps{0.6, {{1.0, 1.0}}}); }

/// Large Brownian part, small clock rate: up-crossing strategies stay optimal (u_bar = -inf).
inline LevyModel monotone_g_model() { return LevyModel(0.0, 0.8, HyperExpJumps{0.6, {{1.0, 1.0}}}); }
inline Context monotone_g_context() { return make_context(monotone_g_model(), 0.05, 0.05, 10.0); }

/// One-sided second-order difference: side = -1 uses points left of x, +1 right.
inline double one_sided_slope(const std::function<double(double)>& f, double x, int side, double h = 1e-5) {
    const double s = side < 0 ? -h : h;
    return (-3.0 * f(x) + 4.0 * f(x + s) - f(x + 2.0 * s)) / (2.0 * s);
}

inline double central_diff(const std::function<double(double)>& f, double x, double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double central_diff2(const std::function<double(double)>& f, double x, double h = 1e-4) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/**
 * Generator of X minus the switching discount rate, applied to f given with its
 * first two derivatives: gamma f' + sigma^2/2 f'' + jump integral - (r + q 1{x<y}) f.
 * The jump integral is done by quadrature against each exponential phase, split at
 * the listed kink locations of f.
 */
inline double generator_residual(const Context& ctx, const std::function<double(double, int)>& f, double x, double y,
                                 std::vector<double> kinks = {}) {
    const auto& m = ctx.model;
    double out = m.gamma() * f(x, 1) + 0.5 * m.sigma() * m.sigma() * f(x, 2);
    std::vector<double> breaks;
    for (double k : kinks)
        if (x - k > 0.0) breaks.push_back(x - k);
    for (const auto& ph : m.jumps().phases) {
        auto g = [&](double u) { return (f(x - u, 0) - f(x, 0)) * ph.eta * std::exp(-ph.eta * u); };
        out += m.jumps().lambda * ph.p * numerics::integrate(g, 0.0, INFINITY, breaks, 1e-12).value;
    }
    return out - (ctx.r + (x < y ? ctx.q : 0.0)) * f(x, 0);
}

/**
 * Two-sided exit value for a = y from the constant-rate exit identity:
 * F(x) + int_(a,b) (W(x-a)/W(b-a) W(b-w) - W(x-w)) (L - r)F(w) dw
 * with F = v_under and (L - r)F = chi on [k_under, inf). Both exits are paid F.
 */
inline double exit_value_above_level(const Context& ctx, double a, double b, double x) {
    const auto& W = ctx.W;
    const double ratio = W(x - a) / W(b - a);
    auto g = [&](double w) { return (ratio * W(b - w) - W(x - w)) * chi_fn(ctx, w); };
    const double breaks[] = {x};
    const double integral = numerics::integrate(g, a, b, breaks, 1e-12).value;
    return v_under(ctx, x) + integral;
}

}  // namespace omega::testing
