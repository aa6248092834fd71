#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omega/context.hpp"

namespace omega {

/// Lower / upper perpetual call values (constant rates r+q and r).
double v_under(const Context& ctx, double x);
double v_over(const Context& ctx, double x);

/// h(x) = v_under(x) - (e^x - K).
double h_fn(const Context& ctx, double x);

/// f(x) = int_(-inf, k_under) h(z) Pi(-x + dz), x >= k_under (closed form).
double f_fn(const Context& ctx, double x);

/// f by direct quadrature against the jump density (test oracle route).
double f_quadrature(const Context& ctx, double x);

/// chi(x) = (L - r) v_under(x).
double chi_fn(const Context& ctx, double x);

/// q v_under(w) - chi(w).
double qv_minus_chi(const Context& ctx, double w);

/// Value of the up-crossing strategy at z for level y, started from x.
double U_fn(const Context& ctx, double y, double z, double x);

/// R(x; y) = (e^x - K) / U(x; y, z) with z = z*(y) supplied by the caller.
double R_fn(const Context& ctx, double y, double z, double x);

/**
 * Delta(x, a; y) =  int_(a,y) W^(r,q)(x, w) [q v_under(w) - chi(w)] dw
 *                 - int_[y, x v y) W^(r)(x - w) chi(w) dw,
 * evaluated in closed form (products of exponential sums). Requires
 * k_under <= a < y.
 */
double Delta_fn(const Context& ctx, double y, double a, double x);

/// d/dx Delta(x, a; y), closed form.
double Delta_dx(const Context& ctx, double y, double a, double x);

/// Delta by adaptive quadrature in w (independent route for tests).
double Delta_quadrature(const Context& ctx, double y, double a, double x);

/**
 * Two-sided exit value V(x; y, a, b) from the resolvent-kernel representation,
 * outer integral by quadrature split at {a, y, x, b}.
 */
double two_sided_value(const Context& ctx, double y, double a, double b, double x);

/// Same value from v_under + Delta(x,a) - W^(r,q)(x,a)/W^(r,q)(b,a) Delta(b,a).
double two_sided_value_closed(const Context& ctx, double y, double a, double b, double x);

/**
 * Martingale case: E_x[exp(-A(T_a^-)) v_under(X(T_a^-))], the b -> inf limit of
 * the two-sided value, for k_under <= a < y and x > a.
 */
double down_exit_value(const Context& ctx, double y, double a, double x);

/**
 * Martingale case: the expectation E_x[exp(-A(T_a^-)) v_under(X(T_a^-))] itself.
 * e^{-rt+X_t} is not uniformly integrable here, so this sits below the b -> inf
 * limit by the mass psi'(1) W^(r,q)(x,a) / T(a) carried off by paths that reach b.
 */
double down_exit_expectation(const Context& ctx, double y, double a, double x);

/// Martingale case: value of never stopping.
double V_infinity_fn(const Context& ctx, double y, double x);

/// Martingale case: T^(r,q)(a) with the context's k_under.
double T_fn(const Context& ctx, double y, double a);

/// Martingale case: Delta_inf(a; y).
double delta_infinity_fn(const Context& ctx, double y, double a);

enum class RegionShape { Empty, Ray, PointPlusRay, IntervalPlusRay, Interval, Point };

std::string to_string(RegionShape s);

struct Interval {
    double lo;
    double hi;  ///< +inf for the unbounded ray
};

/// Ordered union of closed intervals in log-price.
struct StoppingRegion {
    std::vector<Interval> intervals;
    RegionShape shape = RegionShape::Empty;

    [[nodiscard]] bool contains(double x, double tol = 0.0) const;
    /// Throws DomainError if the ordering invariants fail.
    void validate(double k_under) const;
};

struct ProfileRow {
    double x;
    double price;
    double v;
    double payoff;
    bool in_region;
};

struct GridSpec {
    std::size_t n = 600;
    std::optional<double> lo;
    std::optional<double> hi;
};

}  // namespace omega
