#include "omega/solve.hpp"

#include <cmath>
#include <limits>

#include "omega/error.hpp"

namespace omega {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

StoppingRegion ray(double lo) { return {{{lo, kInf}}, RegionShape::Ray}; }

}  // namespace

Solution solve_region(const Context& ctx, const ThresholdSet& th, double y) {
    Solution s{};
    s.y = y;
    const double k = ctx.k_under;
    switch (ctx.mclass) {
        case MartingaleClass::SubMartingale:
            s.infinite_value = true;
            s.region = {{}, RegionShape::Empty};
            return s;
        case MartingaleClass::Martingale: {
            const double y_inf = th.y_inf.value();
            if (y < y_inf - kYInfTol) {
                s.region = {{}, RegionShape::Empty};
            } else if (y <= y_inf + kYInfTol) {
                s.region = {{{k, k}}, RegionShape::Point};
            } else {
                s.a_inf = find_a_infinity(ctx, y);
                s.region = {{{k, *s.a_inf}}, RegionShape::Interval};
            }
            return s;
        }
        case MartingaleClass::SuperMartingale: break;
    }

    if (!std::isfinite(th.u_bar)) {
        if (y < k) {
            s.z_star = z_star(ctx, th.u_bar, y);
            s.region = ray(*s.z_star);
        } else {
            s.region = ray(k);
        }
        return s;
    }
    const double yt = th.y_tilde.value();
    const double ym = th.y_m.value();
    if (y >= ym) {
        s.region = ray(k);
    } else if (y < yt - kYTildeTol) {
        s.z_star = z_star(ctx, th.u_bar, y);
        s.region = ray(*s.z_star);
    } else if (y <= yt + kYTildeTol) {
        s.z_star = z_star(ctx, th.u_bar, std::min(y, th.y_bar));
        s.region = {{{k, k}, {*s.z_star, kInf}}, RegionShape::PointPlusRay};
    } else {
        const auto pair = find_pair(ctx, th.pair_inputs(), y);
        s.a_star = pair.a_star;
        s.b_star = pair.b_star;
        s.region = {{{k, pair.a_star}, {pair.b_star, kInf}}, RegionShape::IntervalPlusRay};
    }
    s.region.validate(k);
    return s;
}

double value_at(const Context& ctx, const Solution& sol, double x) {
    if (sol.infinite_value) return kInf;
    const double y = sol.y;
    if (ctx.mclass == MartingaleClass::Martingale) {
        if (!sol.a_inf) return V_infinity_fn(ctx, y, x);
        if (x <= *sol.a_inf) return v_under(ctx, x);
        return v_under(ctx, x) + Delta_fn(ctx, y, *sol.a_inf, x);
    }
    switch (sol.region.shape) {
        case RegionShape::Ray:
            if (sol.z_star) return U_fn(ctx, y, *sol.z_star, x);
            return v_under(ctx, x);
        case RegionShape::PointPlusRay: return U_fn(ctx, y, *sol.z_star, x);
        case RegionShape::IntervalPlusRay:
            if (x > *sol.a_star && x < *sol.b_star) return v_under(ctx, x) + Delta_fn(ctx, y, *sol.a_star, x);
            return v_under(ctx, x);
        default: break;
    }
    throw Error(ErrorKind::RegimeError, "value_at: unexpected region shape");
}

std::vector<double> default_grid(const Context& ctx, const GridSpec& spec, double y) {
    double lo = 0.0;
    double hi = 0.0;
    if (std::isfinite(ctx.k_under)) {
        lo = ctx.k_under - 2.0;
        hi = std::isfinite(ctx.k_over) ? ctx.k_over + 0.5 : std::max(y, ctx.k_under) + 2.0;
    } else {
        lo = std::log(ctx.K) - 2.0;
        hi = std::log(ctx.K) + 2.0;
    }
    lo = spec.lo.value_or(lo);
    hi = spec.hi.value_or(hi);
    const std::size_t n = std::max<std::size_t>(spec.n, 2);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return xs;
}

namespace {

ProfileRow make_row(const Context& ctx, const Solution& sol, double x) {
    const double price = std::exp(x);
    const double payoff = std::max(price - ctx.K, 0.0);
    const bool in = sol.region.contains(x);
    const double v = in ? price - ctx.K : value_at(ctx, sol, x);
    return {x, price, v, payoff, in};
}

}  // namespace

std::vector<ProfileRow> evaluate_rows(const Context& ctx, const Solution& sol, const std::vector<double>& xs,
                                      bool parallel) {
    std::vector<ProfileRow> rows(xs.size());
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = make_row(ctx, sol, xs[i]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = make_row(ctx, sol, xs[i]);
    }
    return rows;
}

ValueProfile solve(const Context& ctx, const ThresholdSet& th, double y, const GridSpec& grid, bool parallel) {
    ValueProfile vp{y, {}, solve_region(ctx, th, y), classify(ctx)};
    vp.rows = evaluate_rows(ctx, vp.solution, default_grid(ctx, grid, y), parallel);
    return vp;
}

ValueProfile solve(const Context& ctx, double y) { return solve(ctx, compute_thresholds(ctx), y); }

}  // namespace omega
