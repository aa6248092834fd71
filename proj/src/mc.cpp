#include "omega/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "omega/error.hpp"
#include "omega/numerics.hpp"

namespace omega::mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Leaps keep the Gaussian part this many standard deviations clear of every level.
constexpr double kLeapSigmas = 6.0;
constexpr double kMaxStep = 25.0;
// Bridge crossing probabilities exp(-e) with e above this are not sampled.
constexpr double kBridgeCutoff = 50.0;

}  // namespace

JumpSampler::JumpSampler(const HyperExpJumps& jumps) : lambda_(jumps.lambda) {
    double acc = 0.0;
    for (const auto& ph : jumps.phases) {
        acc += ph.p;
        cum_.push_back(acc);
        eta_.push_back(ph.eta);
    }
    for (auto& c : cum_) c /= acc;
}

double JumpSampler::size(rng::Stream& s) const {
    std::size_t i = 0;
    if (eta_.size() > 1) {
        const double u = s.uniform();
        while (i + 1 < cum_.size() && u > cum_[i]) ++i;
    }
    return s.exponential(eta_[i]);
}

PathStreams::PathStreams(const JumpSampler& js, std::uint64_t seed, std::uint64_t path)
    : diffusion(seed, path, rng::Domain::Diffusion),
      jumps(seed, path, rng::Domain::Jumps),
      next_jump(js.intensity() > 0.0 ? jumps.exponential(js.intensity()) : kInf) {}

double linear_fraction_below(double x0, double x1, double y) {
    const bool b0 = x0 < y;
    const bool b1 = x1 < y;
    if (b0 && b1) return 1.0;
    if (!b0 && !b1) return 0.0;
    const double theta = (y - x0) / (x1 - x0);
    return b0 ? theta : 1.0 - theta;
}

double trapezoid_fraction_below(double x0, double x1, double y) {
    return 0.5 * (static_cast<double>(x0 < y) + static_cast<double>(x1 < y));
}

SimState simulate_step(const LevyModel& model, const JumpSampler& js, SimState s, double dt, double y, double r,
                       double q, PathStreams& streams) {
    const double sigma = model.sigma();
    const double t_end = s.t + dt;
    for (;;) {
        const bool jump = streams.next_jump <= t_end;
        const double t1 = jump ? streams.next_jump : t_end;
        const double h = t1 - s.t;
        double x1 = s.x + model.gamma() * h;
        if (sigma > 0.0) x1 += sigma * std::sqrt(h) * streams.diffusion.normal();
        const double frac =
            sigma > 0.0 ? trapezoid_fraction_below(s.x, x1, y) : linear_fraction_below(s.x, x1, y);
        s.occupation += frac * h;
        s.A += (r + q * frac) * h;
        s.t = t1;
        s.x = x1;
        if (!jump) return s;
        s.x -= js.size(streams.jumps);
        streams.next_jump += streams.jumps.exponential(js.intensity());
    }
}

LevyModel esscher_one(const LevyModel& model) {
    const auto& jm = model.jumps();
    HyperExpJumps out;
    double lam = 0.0;
    for (const auto& ph : jm.phases) lam += jm.lambda * ph.p * ph.eta / (ph.eta + 1.0);
    out.lambda = lam;
    for (const auto& ph : jm.phases) {
        const double w = lam > 0.0 ? jm.lambda * ph.p * ph.eta / (ph.eta + 1.0) / lam : ph.p;
        out.phases.push_back({w, ph.eta + 1.0});
    }
    const double s = model.sigma();
    return LevyModel(model.gamma() + s * s, s, out);
}

namespace {

/// What a strategy does at an event: stop with an undiscounted value, or keep going inside (lo, hi).
struct Decision {
    bool stop = false;
    double value = 0.0;
    double lo = -kInf;
    double hi = kInf;
};

Decision stop_with(double v) { return {true, v, -kInf, kInf}; }
Decision keep(double lo, double hi) { return {false, 0.0, lo, hi}; }

struct PathResult {
    double value = 0.0;
    bool killed = false;
    double bound = 0.0;  ///< e^-A times the strategy's bound on what was cut off
};

struct Engine {
    const LevyModel& model;
    JumpSampler js;
    double rate_above;
    double rate_below;
    double y;
    double dt;
    double horizon;
    std::uint64_t seed;

    /// Largest step keeping the Gaussian move kLeapSigmas deviations inside distance d.
    [[nodiscard]] double leap(double d) const {
        const double g = std::abs(model.gamma());
        const double ks = kLeapSigmas * model.sigma();
        if (!(d > 0.0)) return 0.0;
        if (g < 1e-300) return ks > 0.0 ? (d / ks) * (d / ks) : kMaxStep;
        const double s = (-ks + std::sqrt(ks * ks + 4.0 * g * d)) / (2.0 * g);
        return s * s;
    }

    [[nodiscard]] double fraction_below(double x0, double x1) const {
        return model.sigma() > 0.0 ? trapezoid_fraction_below(x0, x1, y) : linear_fraction_below(x0, x1, y);
    }

    void check_clock(double t, double A) const {
        const double lo = std::min(rate_above, rate_below) * t;
        const double hi = std::max(rate_above, rate_below) * t;
        const double slack = 1e-9 * (1.0 + hi);
        if (A < lo - slack || A > hi + slack) throw Error(ErrorKind::DomainError, "clock bound violated");
    }

    template <class Strategy>
    PathResult run(const Strategy& st, double x, std::uint64_t path, double sign) const {
        Decision d = st.start(x);
        if (d.stop) return {d.value, false, 0.0};
        double lo = d.lo;
        double hi = d.hi;

        rng::Stream dif(seed, path, rng::Domain::Diffusion);
        // the antithetic partner negates the Gaussian increments and mirrors the jump uniforms
        rng::Stream jmp(seed, path, rng::Domain::Jumps, sign < 0.0);
        rng::Stream brg(seed, path, rng::Domain::Bridge);
        const double lam = js.intensity();
        double next_jump = lam > 0.0 ? jmp.exponential(lam) : kInf;
        const double sigma = model.sigma();
        const double var_rate = sigma * sigma;
        double t = 0.0;
        double A = 0.0;

        auto accrue = [&](double x0, double x1, double h) {
            A += h * (rate_above + (rate_below - rate_above) * fraction_below(x0, x1));
            t += h;
        };
        auto finish = [&](double value) {
            check_clock(t, A);
            return PathResult{std::exp(-A) * value, false, 0.0};
        };

        for (;;) {
            if (A >= kKillExponent) {
                check_clock(t, A);
                return {0.0, true, std::exp(-A) * st.cap(x)};
            }
            if (t >= horizon) {
                check_clock(t, A);
                const double v = st.at_horizon(x);
                return {std::exp(-A) * v, true, std::exp(-A) * st.horizon_bound(x)};
            }
            double dist = std::abs(x - y);
            if (std::isfinite(lo)) dist = std::min(dist, x - lo);
            if (std::isfinite(hi)) dist = std::min(dist, hi - x);
            double h = std::min(std::max(dt, leap(dist)), kMaxStep);
            h = std::min(h, horizon - t);
            const bool jump_now = next_jump - t <= h;
            if (jump_now) h = next_jump - t;

            double x1 = x + model.gamma() * h;
            if (sigma > 0.0) x1 += sign * sigma * std::sqrt(h) * dif.normal();

            if (x1 >= hi) {
                const double theta = (hi - x) / (x1 - x);
                accrue(x, hi, theta * h);
                return finish(st.on_upper(hi));
            }
            if (x1 <= lo) {
                const double theta = (x - lo) / (x - x1);
                accrue(x, lo, theta * h);
                return finish(st.on_lower(lo));
            }
            if (sigma > 0.0) {
                if (std::isfinite(hi)) {
                    const double e = 2.0 * (hi - x) * (hi - x1) / (var_rate * h);
                    if (e < kBridgeCutoff && brg.uniform() < std::exp(-e)) {
                        accrue(x, x1, h);
                        return finish(st.on_upper(hi));
                    }
                }
                if (std::isfinite(lo)) {
                    const double e = 2.0 * (x - lo) * (x1 - lo) / (var_rate * h);
                    if (e < kBridgeCutoff && brg.uniform() < std::exp(-e)) {
                        accrue(x, x1, h);
                        return finish(st.on_lower(lo));
                    }
                }
            }
            accrue(x, x1, h);
            x = x1;
            if (jump_now) {
                t = next_jump;
                x -= js.size(jmp);
                next_jump += jmp.exponential(lam);
                d = st.on_jump(x);
                if (d.stop) return finish(d.value);
                lo = d.lo;
                hi = d.hi;
            }
        }
    }
};

double default_horizon(double rate_min) { return rate_min > 0.0 ? kKillExponent / rate_min : 400.0; }

template <class Strategy>
McEstimate estimate(const Engine& eng, const Strategy& st, double x, const PathConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw Error(ErrorKind::DomainError, "dt must be positive");
    if (cfg.n_paths < 2) throw Error(ErrorKind::DomainError, "need at least two paths");
    if (cfg.antithetic && cfg.n_paths % 2 != 0) throw Error(ErrorKind::DomainError, "antithetic needs an even path count");
    const std::size_t m = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
    std::vector<double> vals(m);
    std::vector<double> bounds(m);
    std::vector<unsigned char> killed(m);

    auto one = [&](std::size_t i) {
        if (cfg.antithetic) {
            const auto p = eng.run(st, x, i, 1.0);
            const auto n = eng.run(st, x, i, -1.0);
            vals[i] = 0.5 * (p.value + n.value);
            bounds[i] = 0.5 * (p.bound + n.bound);
            killed[i] = static_cast<unsigned char>(p.killed) + static_cast<unsigned char>(n.killed);
        } else {
            const auto p = eng.run(st, x, i, 1.0);
            vals[i] = p.value;
            bounds[i] = p.bound;
            killed[i] = static_cast<unsigned char>(p.killed);
        }
    };
    const auto mm = static_cast<std::ptrdiff_t>(m);
    if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < mm; ++i) one(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < mm; ++i) one(static_cast<std::size_t>(i));
    }

    McEstimate out;
    out.n = cfg.n_paths;
    out.mean = numerics::pairwise_sum(vals) / static_cast<double>(m);
    std::vector<double> sq(m);
    for (std::size_t i = 0; i < m; ++i) sq[i] = (vals[i] - out.mean) * (vals[i] - out.mean);
    out.std_error = std::sqrt(numerics::pairwise_sum(sq) / static_cast<double>(m - 1) / static_cast<double>(m));
    out.truncation_bound = numerics::pairwise_sum(bounds) / static_cast<double>(m);
    for (auto k : killed) out.n_killed += k;
    return out;
}

Engine make_engine(const Context& ctx, const LevyModel& model, double ra, double rb, double y, const PathConfig& cfg,
                   double fallback_horizon) {
    double horizon = cfg.horizon;
    if (horizon <= 0.0) {
        const double rmin = std::min(ra, rb);
        horizon = rmin > 0.0 ? default_horizon(rmin) : fallback_horizon;
    }
    (void)ctx;
    return Engine{model, JumpSampler(model.jumps()), ra, rb, y, cfg.dt, horizon, cfg.seed};
}

// Strategies. cap(x) bounds the undiscounted value still to come from x,
// horizon_bound(x) the value lost by cutting the path at the horizon.

struct UpCross {
    double z;
    [[nodiscard]] Decision start(double x) const { return x >= z ? stop_with(1.0) : keep(-kInf, z); }
    [[nodiscard]] double on_upper(double) const { return 1.0; }
    [[nodiscard]] double on_lower(double) const { return 0.0; }
    [[nodiscard]] Decision on_jump(double) const { return keep(-kInf, z); }
    [[nodiscard]] double cap(double) const { return 1.0; }
    [[nodiscard]] double at_horizon(double) const { return 0.0; }
    [[nodiscard]] double horizon_bound(double) const { return 1.0; }
};

struct UpHit {
    double a;
    double b;
    [[nodiscard]] Decision start(double x) const {
        if (x >= b) return stop_with(1.0);
        if (x < a) return stop_with(0.0);
        return keep(a, b);
    }
    [[nodiscard]] double on_upper(double) const { return 1.0; }
    [[nodiscard]] double on_lower(double) const { return 0.0; }
    [[nodiscard]] Decision on_jump(double x) const { return x < a ? stop_with(0.0) : keep(a, b); }
    [[nodiscard]] double cap(double) const { return 1.0; }
    [[nodiscard]] double at_horizon(double) const { return 0.0; }
    [[nodiscard]] double horizon_bound(double) const { return 1.0; }
};

struct TwoSided {
    const Context& ctx;
    double a;
    double b;
    [[nodiscard]] Decision start(double x) const {
        if (x >= b || x < a) return stop_with(v_under(ctx, x));
        return keep(a, b);
    }
    [[nodiscard]] double on_upper(double x) const { return v_under(ctx, x); }
    [[nodiscard]] double on_lower(double x) const { return v_under(ctx, x); }
    [[nodiscard]] Decision on_jump(double x) const { return x < a ? stop_with(v_under(ctx, x)) : keep(a, b); }
    // e^{-rt + X_t} is a supermartingale for r >= psi(1), so e^x bounds any payoff below e^X.
    [[nodiscard]] double cap(double x) const {
        return std::isfinite(b) ? std::min(v_under(ctx, b), std::exp(x)) : std::exp(x);
    }
    [[nodiscard]] double at_horizon(double) const { return 0.0; }
    [[nodiscard]] double horizon_bound(double x) const { return cap(x); }
};

struct RegionEntry {
    const Context& ctx;
    const StoppingRegion& region;
    [[nodiscard]] double payoff(double x) const { return std::max(std::exp(x) - ctx.K, 0.0); }
    [[nodiscard]] Decision gap(double x) const {
        if (region.contains(x)) return stop_with(payoff(x));
        double lo = -kInf;
        double hi = kInf;
        for (const auto& iv : region.intervals) {
            if (iv.hi < x) lo = std::max(lo, iv.hi);
            if (iv.lo > x) hi = std::min(hi, iv.lo);
        }
        return keep(lo, hi);
    }
    [[nodiscard]] Decision start(double x) const { return gap(x); }
    [[nodiscard]] double on_upper(double x) const { return payoff(x); }
    [[nodiscard]] double on_lower(double x) const { return payoff(x); }
    [[nodiscard]] Decision on_jump(double x) const { return gap(x); }
    [[nodiscard]] double cap(double x) const { return std::exp(x); }
    [[nodiscard]] double at_horizon(double) const { return 0.0; }
    [[nodiscard]] double horizon_bound(double x) const { return std::exp(x); }
};

/// Never stop, simulated under the Esscher measure; the value is e^{x0 - q * occupation}.
struct NeverStop {
    const Context& ctx;
    double x0;
    double y;
    [[nodiscard]] Decision start(double) const { return keep(-kInf, kInf); }
    [[nodiscard]] double on_upper(double) const { return 0.0; }
    [[nodiscard]] double on_lower(double) const { return 0.0; }
    [[nodiscard]] Decision on_jump(double) const { return keep(-kInf, kInf); }
    [[nodiscard]] double cap(double) const { return std::exp(x0); }
    [[nodiscard]] double at_horizon(double) const { return std::exp(x0); }
    // Probability of ever returning below y under the tilted law:
    // 1 - psi'(1) W_1(x - y) with W_1(u) = e^{-u} W^(r)(u) when r = psi(1).
    [[nodiscard]] double horizon_bound(double x) const {
        if (x < y) return std::exp(x0);
        const double u = x - y;
        const double back = 1.0 - ctx.model.dpsi(1.0) * std::exp(-u) * ctx.W(u);
        return std::exp(x0) * std::clamp(back, 0.0, 1.0);
    }
};

}  // namespace

McEstimate estimate_upcross_discount(const Context& ctx, double x, double z, double y, const PathConfig& cfg) {
    const auto eng = make_engine(ctx, ctx.model, ctx.r, ctx.r + ctx.q, y, cfg, 400.0);
    return estimate(eng, UpCross{z}, x, cfg);
}

McEstimate estimate_uphit(const Context& ctx, double x, double y, double a, double b, const PathConfig& cfg) {
    if (!(a < b)) throw Error(ErrorKind::DomainError, "uphit: need a < b");
    const auto eng = make_engine(ctx, ctx.model, ctx.r, ctx.r + ctx.q, y, cfg, 400.0);
    return estimate(eng, UpHit{a, b}, x, cfg);
}

McEstimate estimate_two_sided(const Context& ctx, double x, double y, double a, double b, const PathConfig& cfg) {
    if (!(a < b)) throw Error(ErrorKind::DomainError, "two-sided: need a < b");
    const auto eng = make_engine(ctx, ctx.model, ctx.r, ctx.r + ctx.q, y, cfg, 400.0);
    return estimate(eng, TwoSided{ctx, a, b}, x, cfg);
}

McEstimate estimate_region_strategy(const Context& ctx, double x, double y, const StoppingRegion& region,
                                    const PathConfig& cfg) {
    for (std::size_t i = 0; i < region.intervals.size(); ++i) {
        const auto& iv = region.intervals[i];
        if (iv.lo > iv.hi) throw Error(ErrorKind::DomainError, "region interval with lo > hi");
        if (i > 0 && region.intervals[i - 1].hi >= iv.lo)
            throw Error(ErrorKind::DomainError, "region intervals must be disjoint and ordered");
    }
    const auto eng = make_engine(ctx, ctx.model, ctx.r, ctx.r + ctx.q, y, cfg, 400.0);
    return estimate(eng, RegionEntry{ctx, region}, x, cfg);
}

McEstimate estimate_never_stop(const Context& ctx, double x, double y, const PathConfig& cfg) {
    if (ctx.mclass != MartingaleClass::Martingale)
        throw Error(ErrorKind::RegimeError, "never-stop estimator needs r = psi(1)");
    const LevyModel tilted = esscher_one(ctx.model);
    PathConfig c = cfg;
    if (c.horizon <= 0.0) c.horizon = 400.0;
    const auto eng = make_engine(ctx, tilted, 0.0, ctx.q, y, c, 400.0);
    return estimate(eng, NeverStop{ctx, x, y}, x, c);
}

}  // namespace omega::mc
