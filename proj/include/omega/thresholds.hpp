#pragma once

#include <limits>
#include <optional>

#include "omega/context.hpp"

namespace omega {

/// g(u) = e^u (1 - 1/Lambda-bar(u)); right-continuous at 0.
double g_fn(const Context& ctx, double u);
/// Left limit g(0-) = (Phi(r+q) - 1)/Phi(r+q).
double g_left_at_zero(const Context& ctx);
/// g'(u) = e^u H(u) / Lambda-bar(u)^2.
double g_deriv(const Context& ctx, double u);
/// H(u) = (Phi(r+q) - 1) Lambda-bar(u) - W^(r)'(u)/I(u); the sign of g'.
double H_fn(const Context& ctx, double u);

/// (Phi(r+q)-1)(Phi(r+q) - q W(0)) - q W'(0+) >= 0.
bool cond1_holds(const Context& ctx);

/// Largest local minimum of g: -inf or 0 when cond1 holds, else the last root of H.
double find_u_bar(const Context& ctx);

/// log(K / g(u_bar)) for finite u_bar, +inf otherwise.
double find_y_bar(const Context& ctx, double u_bar);

/// y + inf{u > u_bar : g(u) > K e^{-y}}; DomainError if y > y_bar.
double z_star(const Context& ctx, double u_bar, double y);

/// -log(sup_{u <= u_bar} g(u) / K); RegimeError if u_bar = -inf.
double find_y0(const Context& ctx, double u_bar);

/// sup_{x < u_bar + y} R(x; y) and the maximiser.
struct SupR {
    double value;
    double argmax;
};
SupR sup_R(const Context& ctx, double u_bar, double y);

struct YTilde {
    double y_tilde;
    double x0;  ///< maximiser of R(.; y_tilde), equal to k_under in theory
};
YTilde find_y_tilde(const Context& ctx, double u_bar, double y0, double y_bar);

/// Root of chi above k_under; k_under itself when chi(k_under) <= 0.
double find_y_m(const Context& ctx);

struct ExercisePair {
    double a_star;
    double b_star;
    double y;
};

struct PairInputs {
    double u_bar;
    double y_tilde;
    double y_m;
    double z_star_y_tilde;
};

/**
 * (a*(y), b*(y)) for y in (y_tilde, y_m). The continuity probe compares b*
 * at y +- 1e-3 and throws BranchingDetected on a jump.
 */
ExercisePair find_pair(const Context& ctx, const PairInputs& in, double y, bool probe = true);

/// Martingale case: closed-form y_inf.
double find_y_infinity(const Context& ctx);

/// Martingale case: root of Delta_inf(.; y) on (k_under, y).
double find_a_infinity(const Context& ctx, double y);

/// All levels that do not depend on y.
struct ThresholdSet {
    MartingaleClass mclass;
    double k_under;
    double k_over;
    double u_bar = std::numeric_limits<double>::quiet_NaN();
    double y_bar = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> y0;
    std::optional<double> y_tilde;
    std::optional<double> x0;
    std::optional<double> z_star_y_tilde;
    std::optional<double> y_m;
    std::optional<double> y_inf;

    [[nodiscard]] PairInputs pair_inputs() const;
};

ThresholdSet compute_thresholds(const Context& ctx);

}  // namespace omega
