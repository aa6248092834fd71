#pragma once

#include <cstddef>
#include <cstdint>

#include "omega/context.hpp"
#include "omega/rng.hpp"
#include "omega/valuation.hpp"

namespace omega::mc {

/// Paths are killed once the accumulated discount exponent reaches this (e^-A < 1e-8).
inline constexpr double kKillExponent = 18.420680743952367;

struct PathConfig {
    double x0 = 0.0;       ///< start for sample_path; estimators take x explicitly
    double horizon = 0.0;  ///< 0 selects the default kKillExponent / (smallest discount rate)
    double dt = 1e-3;
    std::size_t n_paths = 100000;
    std::uint64_t seed = 20240611;
    bool antithetic = false;
    bool parallel = true;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    std::size_t n_killed = 0;      ///< paths cut by the discount or horizon rule
    double truncation_bound = 0.0; ///< bound on |bias| from those cuts
};

/// Hyper-exponential jump sampler (phase by weight, then exponential size).
class JumpSampler {
public:
    explicit JumpSampler(const HyperExpJumps& jumps);
    [[nodiscard]] double intensity() const noexcept { return lambda_; }
    double size(rng::Stream& s) const;

private:
    double lambda_;
    std::vector<double> cum_;
    std::vector<double> eta_;
};

struct SimState {
    double x = 0.0;
    double t = 0.0;
    double A = 0.0;          ///< r t + q * occupation
    double occupation = 0.0; ///< time spent below y
};

/// Per-path random streams plus the pending jump time.
struct PathStreams {
    rng::Stream diffusion;
    rng::Stream jumps;
    double next_jump;
    PathStreams(const JumpSampler& js, std::uint64_t seed, std::uint64_t path);
};

/// Fraction of a straight step from x0 to x1 spent below y (exact for a line).
double linear_fraction_below(double x0, double x1, double y);

/// Trapezoid occupation rule on the endpoint indicators.
double trapezoid_fraction_below(double x0, double x1, double y);

/**
 * Advance one step of length dt: Brownian increment plus every jump whose
 * exponential arrival time falls inside the step, the clock advancing by the
 * time spent below y (trapezoid rule, or exact when sigma = 0).
 */
SimState simulate_step(const LevyModel& model, const JumpSampler& js, SimState s, double dt, double y, double r,
                       double q, PathStreams& streams);

/// Model of X under the measure with density e^{X_t - X_0 - psi(1) t}.
LevyModel esscher_one(const LevyModel& model);

/// E_x[exp(-A(T_z^+))].
McEstimate estimate_upcross_discount(const Context& ctx, double x, double z, double y, const PathConfig& cfg);

/// E_x[exp(-A(T_b^+)) ; T_b^+ < T_a^-].
McEstimate estimate_uphit(const Context& ctx, double x, double y, double a, double b, const PathConfig& cfg);

/// E_x[exp(-A(tau)) v_under(X(tau))], tau = T_a^- ^ T_b^+; b may be +inf.
McEstimate estimate_two_sided(const Context& ctx, double x, double y, double a, double b, const PathConfig& cfg);

/**
 * E_x[exp(-A(tau)) (e^X(tau) - K)^+] with tau the first entry into the region.
 * After a jump lands below the lowest component the path waits for X to creep
 * back up to it; in an interior gap it waits for either neighbour.
 */
McEstimate estimate_region_strategy(const Context& ctx, double x, double y, const StoppingRegion& region,
                                    const PathConfig& cfg);

/**
 * Value of never stopping, e^x E^1_x[exp(-q * time below y)], simulated under
 * the Esscher-transformed model up to cfg.horizon (default 400). Martingale
 * case only (RegimeError otherwise).
 */
McEstimate estimate_never_stop(const Context& ctx, double x, double y, const PathConfig& cfg);

}  // namespace omega::mc
