#include <catch_amalgamated.hpp>

#include <cmath>

#include "../support/fixtures.hpp"
#include "omega/error.hpp"
#include "omega/thresholds.hpp"

using namespace omega;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Closed-form criterion for the monotone-g condition (completely monotone jump density).
bool explicit_criterion(const Context& ctx) {
    const double p = ctx.phi_rq;
    return (p - 1.0) * (p - ctx.q * ctx.W(0.0)) - ctx.q * ctx.W(0.0, 1) >= 0.0;
}

}  // namespace

TEST_CASE("monotone-g condition agrees with the explicit criterion", "[thresholds]") {
    const auto a = testing::reference_context();
    const auto b = testing::monotone_g_context();
    const auto c = make_context(testing::two_phase_model(), 0.05, 1.0, 10.0);
    CHECK(cond1_holds(a) == explicit_criterion(a));
    CHECK(cond1_holds(b) == explicit_criterion(b));
    CHECK(cond1_holds(c) == explicit_criterion(c));
    CHECK_FALSE(cond1_holds(a));
    CHECK(cond1_holds(b));
}

TEST_CASE("u_bar is the largest local minimum of g", "[thresholds]") {
    for (const auto& ctx : {testing::reference_context(), make_context(testing::two_phase_model(), 0.05, 1.0, 10.0)}) {
        const double u = find_u_bar(ctx);
        REQUIRE(u > 0.0);
        CHECK(std::abs(H_fn(ctx, u)) < 1e-8);
        CHECK(g_deriv(ctx, u - 1e-3) < 0.0);
        CHECK(g_deriv(ctx, u + 1e-3) > 0.0);
        for (int i = 1; i <= 2000; ++i) CHECK(g_deriv(ctx, u + 1e-3 + 0.025 * i) > 0.0);
        auto g = [&](double t) { return g_fn(ctx, t); };
        CHECK_THAT(g_deriv(ctx, u + 0.5), WithinRel(testing::central_diff(g, u + 0.5, 1e-6), 1e-6));
    }
}

TEST_CASE("u_bar in the monotone regimes", "[thresholds]") {
    CHECK(find_u_bar(testing::monotone_g_context()) == -INFINITY);
    const auto bv = make_context(testing::bv_model(), 0.05, 1.0, 10.0);
    CHECK(find_u_bar(bv) == 0.0);
}

TEST_CASE("first-order condition for z*(y)", "[thresholds]") {
    const auto ctx = testing::reference_context();
    const double u = find_u_bar(ctx);
    const double yb = find_y_bar(ctx, u);
    for (int i = 0; i < 10; ++i) {
        const double y = 1.5 + (yb - 1.5) * i / 9.0;
        const double z = z_star(ctx, u, y);
        CHECK_THAT(std::exp(y) * g_fn(ctx, z - y), WithinAbs(ctx.K, 1e-9));
        CHECK(z > ctx.k_under);
        CHECK(z < ctx.k_over);
    }
    CHECK_THROWS_AS(z_star(ctx, u, yb + 0.1), Error);
}

TEST_CASE("smooth fit of the up-crossing value at z*", "[thresholds]") {
    for (const auto& ctx : {testing::reference_context(), testing::monotone_g_context()}) {
        const double u = find_u_bar(ctx);
        const double y = std::isfinite(u) ? 2.7 : ctx.k_under - 0.5;
        const double z = z_star(ctx, u, y);
        auto v = [&](double x) { return U_fn(ctx, y, z, x); };
        CHECK_THAT(testing::one_sided_slope(v, z, -1), WithinRel(std::exp(z), 1e-4));
        for (int i = 1; i <= 20; ++i) {
            const double x = z - 0.1 * i;
            CHECK(R_fn(ctx, y, z, x) < 1.0);
        }
    }
}

TEST_CASE("representation: expected e^y g(max at the clock time) equals e^x", "[thresholds]") {
    const auto ctx = testing::reference_context();
    const double y = 3.0;
    for (double x : {2.0, 3.0, 3.8}) {
        // P(max > z) = I(x-y)/I(z-y); density = hazard * tail
        auto integrand = [&](double z) {
            const double tail = ctx.I(x - y) / ctx.I(z - y);
            const double lam = hazard(ctx.W, ctx.I, z - y);
            return std::exp(y) * g_fn(ctx, z - y) * lam * tail;
        };
        const double brk[] = {y};
        // the integrand decays like exp(-(Phi(r) - 1) z); cut where the tail is below 1e-9
        const auto res = numerics::integrate(integrand, x, y + 21.0 / (ctx.phi_r - 1.0), brk, 1e-11);
        CHECK_THAT(res.value, WithinRel(std::exp(x), 1e-6));
    }
}

TEST_CASE("branching level, collapse level and the pair (a*, b*)", "[thresholds]") {
    const auto ctx = testing::reference_context();
    const auto th = compute_thresholds(ctx);
    REQUIRE(th.y_tilde);
    REQUIRE(th.y_m);
    CHECK(*th.y0 <= *th.y_tilde);
    CHECK(*th.y_tilde <= th.y_bar);
    CHECK_THAT(*th.x0, WithinAbs(ctx.k_under, 1e-4));
    const auto sr = sup_R(ctx, th.u_bar, *th.y_tilde);
    CHECK_THAT(sr.value, WithinAbs(1.0, 1e-4));
    CHECK(std::abs(chi_fn(ctx, *th.y_m)) < 1e-9);

    for (double y : {2.85, 3.0, 3.3, 3.6}) {
        const auto p = find_pair(ctx, th.pair_inputs(), y);
        CHECK(p.a_star >= ctx.k_under);
        CHECK(p.a_star < y);
        CHECK(p.b_star > y);
        CHECK(std::abs(Delta_fn(ctx, y, p.a_star, p.b_star)) < 1e-6);
        CHECK(std::abs(Delta_dx(ctx, y, p.a_star, p.b_star)) < 1e-6);
    }
}

TEST_CASE("smooth fit of the value at b* and a*", "[thresholds]") {
    const auto ctx = testing::reference_context();
    const auto th = compute_thresholds(ctx);
    const double y = 3.0;
    const auto sol = solve_region(ctx, th, y);
    REQUIRE(sol.region.shape == RegionShape::IntervalPlusRay);
    auto v = [&](double x) { return value_at(ctx, sol, x); };
    CHECK_THAT(testing::one_sided_slope(v, *sol.b_star, -1), WithinRel(std::exp(*sol.b_star), 1e-4));
    CHECK_THAT(testing::one_sided_slope(v, *sol.a_star, +1), WithinRel(std::exp(*sol.a_star), 1e-4));
}

TEST_CASE("martingale thresholds", "[thresholds][martingale]") {
    const auto ctx = testing::reference_context(0.02);
    const double yi = find_y_infinity(ctx);
    CHECK(yi > ctx.k_under);
    const double y = yi + 1.0;
    const double a = find_a_infinity(ctx, y);
    CHECK(a > ctx.k_under);
    CHECK(a < y);
    CHECK(std::abs(delta_infinity_fn(ctx, y, a)) < 1e-8);
}
