#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "../support/fixtures.hpp"
#include "omega/error.hpp"
#include "omega/solve.hpp"

using namespace omega;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("region shapes across the level y", "[solve]") {
    const auto ctx = testing::reference_context();
    const auto th = compute_thresholds(ctx);
    const auto a = solve_region(ctx, th, 2.7);
    CHECK(a.region.shape == RegionShape::Ray);
    CHECK(a.z_star.has_value());
    const auto b = solve_region(ctx, th, *th.y_tilde);
    CHECK(b.region.shape == RegionShape::PointPlusRay);
    CHECK(b.region.intervals[0].lo == ctx.k_under);
    CHECK(b.region.intervals[0].hi == ctx.k_under);
    const auto c = solve_region(ctx, th, 3.0);
    CHECK(c.region.shape == RegionShape::IntervalPlusRay);
    const auto d = solve_region(ctx, th, 10.0);
    CHECK(d.region.shape == RegionShape::Ray);
    CHECK(d.region.intervals[0].lo == ctx.k_under);
    for (double x : {2.0, 3.0, 4.0}) CHECK(value_at(ctx, d, x) == v_under(ctx, x));
}

TEST_CASE("monotone-g regime gives a single ray", "[solve]") {
    const auto ctx = testing::monotone_g_context();
    const auto th = compute_thresholds(ctx);
    const auto below = solve_region(ctx, th, ctx.k_under - 0.5);
    CHECK(below.region.shape == RegionShape::Ray);
    CHECK(*below.z_star > ctx.k_under);
    const auto above = solve_region(ctx, th, ctx.k_under + 0.5);
    CHECK(above.region.intervals[0].lo == ctx.k_under);
}

TEST_CASE("value dominates the payoff, with equality on the region", "[solve]") {
    const auto ctx = testing::reference_context();
    const auto th = compute_thresholds(ctx);
    for (double y : {2.5, 2.7, *th.y_tilde, 3.0, 3.5, 10.0}) {
        const auto vp = solve(ctx, th, y);
        REQUIRE(vp.rows.size() == 600);
        for (const auto& r : vp.rows) {
            CHECK(r.v >= r.payoff - 1e-8);
            if (r.in_region) CHECK_THAT(r.v, WithinAbs(r.payoff, 1e-8));
            else CHECK(r.v > r.payoff - 1e-8);
        }
    }
}

TEST_CASE("value and region are monotone in y", "[solve]") {
    const auto ctx = testing::reference_context();
    const auto th = compute_thresholds(ctx);
    const double ys[] = {2.5, 2.7, *th.y_tilde + 0.05, 3.0, 3.5};
    const auto xs = default_grid(ctx, {}, 3.0);
    for (int i = 0; i + 1 < 5; ++i) {
        const auto s1 = solve_region(ctx, th, ys[i]);
        const auto s2 = solve_region(ctx, th, ys[i + 1]);
        for (double x : xs) {
            CHECK(value_at(ctx, s2, x) <= value_at(ctx, s1, x) + 1e-9);
            if (s1.region.contains(x)) CHECK(s2.region.contains(x));
        }
    }
}

TEST_CASE("parallel and serial row kernels are bit-identical", "[solve]") {
    const auto ctx = testing::reference_context();
    const auto th = compute_thresholds(ctx);
    const auto sol = solve_region(ctx, th, 3.0);
    const auto xs = default_grid(ctx, {2000, {}, {}}, 3.0);
    const auto a = evaluate_rows(ctx, sol, xs, true);
    const auto b = evaluate_rows(ctx, sol, xs, false);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::memcmp(&a[i].v, &b[i].v, sizeof(double)) == 0);
        CHECK(a[i].in_region == b[i].in_region);
    }
}

TEST_CASE("martingale regime: empty, point, interval", "[solve][martingale]") {
    const auto ctx = testing::reference_context(0.02);
    const auto th = compute_thresholds(ctx);
    const double yi = *th.y_inf;
    CHECK(solve_region(ctx, th, yi - 0.2).region.shape == RegionShape::Empty);
    const auto p = solve_region(ctx, th, yi);
    CHECK(p.region.shape == RegionShape::Point);
    const auto iv = solve_region(ctx, th, yi + 1.0);
    REQUIRE(iv.region.shape == RegionShape::Interval);
    CHECK(iv.region.intervals[0].lo == ctx.k_under);
    CHECK(iv.region.intervals[0].hi == *iv.a_inf);
    const auto e = solve_region(ctx, th, yi - 0.2);
    CHECK_THAT(value_at(ctx, e, 2.0), WithinRel(V_infinity_fn(ctx, yi - 0.2, 2.0), 1e-14));
}

TEST_CASE("sub-martingale regime carries the infinite-value flag", "[solve]") {
    const auto ctx = testing::reference_context(0.01);
    const auto vp = solve(ctx, 3.0);
    CHECK(vp.solution.infinite_value);
    CHECK(vp.solution.region.shape == RegionShape::Empty);
    CHECK(vp.solution.region.intervals.empty());
}
