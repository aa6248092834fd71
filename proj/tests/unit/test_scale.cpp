#include <catch_amalgamated.hpp>

#include <cmath>

#include "../support/fixtures.hpp"
#include "omega/scale.hpp"

using namespace omega;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Laplace transform of W matches 1/(psi - r)", "[scale]") {
    for (const auto& m : {testing::reference_model(), testing::two_phase_model(), testing::bv_model()}) {
        const double r = 0.05;
        const auto W = build_scale(m, r);
        const double p = phi(m, r);
        for (double beta : {p + 0.5, p + 1.0, p + 3.0}) {
            const auto lt = numerics::integrate([&](double x) { return std::exp(-beta * x) * W(x); }, 0.0,
                                                60.0 / (beta - p), 1e-12);
            CHECK_THAT(lt.value, WithinRel(1.0 / (m.psi(beta) - r), 1e-6));
        }
    }
}

TEST_CASE("W at the origin", "[scale]") {
    const auto W = build_scale(testing::reference_model(), 0.05);
    CHECK_THAT(W(0.0), WithinAbs(0.0, 1e-12));
    CHECK_THAT(W(0.0, 1), WithinRel(2.0 / (0.2 * 0.2), 1e-9));
    CHECK(W(-0.1) == 0.0);
    const auto Wbv = build_scale(testing::bv_model(), 0.05);
    CHECK_THAT(Wbv(0.0), WithinRel(1.0 / 0.3, 1e-10));
}

TEST_CASE("W derivatives agree with finite differences", "[scale]") {
    const auto W = build_scale(testing::two_phase_model(), 0.05);
    auto f = [&](double x) { return W(x); };
    for (double x : {0.2, 1.0, 3.0}) {
        CHECK_THAT(W(x, 1), WithinRel(testing::central_diff(f, x), 1e-7));
        CHECK_THAT(W(x, 2), WithinRel(testing::central_diff2(f, x), 1e-5));
    }
}

TEST_CASE("occupation kernel at zero and against its integral definition", "[scale]") {
    const auto ctx = testing::reference_context();
    CHECK_THAT(ctx.I(0.0), WithinRel(1.0 / ctx.q, 1e-12));
    CHECK_THAT(ctx.I.at_zero_closed_form(), WithinRel(1.0 / ctx.q, 1e-10));
    for (double x : {0.3, 1.2, 4.0}) {
        const auto def = numerics::integrate([&](double u) { return std::exp(-ctx.phi_rq * u) * ctx.W(u + x); }, 0.0,
                                             60.0 / (ctx.phi_rq - ctx.phi_r), 1e-12);
        CHECK_THAT(ctx.I(x), WithinRel(def.value, 1e-9));
    }
    CHECK_THAT(ctx.I(-0.7), WithinRel(std::exp(-0.7 * ctx.phi_rq) / ctx.q, 1e-14));
}

TEST_CASE("I' and I'' agree with finite differences on both sides of zero", "[scale]") {
    const auto ctx = testing::reference_context();
    auto f = [&](double x) { return ctx.I(x); };
    for (double x : {-1.0, -0.2, 0.2, 1.0, 3.0}) {
        CHECK_THAT(ctx.I(x, 1), WithinRel(testing::central_diff(f, x), 1e-6));
        CHECK_THAT(ctx.I(x, 2), WithinRel(testing::central_diff2(f, x), 1e-6));
    }
}

TEST_CASE("I is log-concave and the hazard decreases from Phi(r+q) to Phi(r)", "[scale]") {
    for (const auto& m : {testing::reference_model(), testing::two_phase_model()}) {
        const auto ctx = make_context(m, 0.05, 1.0, 10.0);
        double prev = INFINITY;
        for (int i = 0; i <= 400; ++i) {
            const double x = -2.0 + 0.05 * i;
            const double I0 = ctx.I(x);
            CHECK(ctx.I(x, 2) * I0 - ctx.I(x, 1) * ctx.I(x, 1) <= 1e-12 * I0 * I0);
            const double lam = hazard(ctx.W, ctx.I, x);
            if (x < 0.0) {
                CHECK_THAT(lam, WithinRel(ctx.phi_rq, 1e-14));
            } else {
                CHECK(lam <= prev * (1.0 + 1e-14));
                CHECK(lam > ctx.phi_r);
            }
            prev = lam;
        }
        CHECK_THAT(hazard(ctx.W, ctx.I, 40.0), WithinRel(ctx.phi_r, 1e-8));
        CHECK_THAT(hazard(ctx.W, ctx.I, 1e-9), WithinRel(ctx.phi_rq, 1e-6));
    }
}

TEST_CASE("three routes to W^(r,q)(x, a) agree on a grid", "[scale]") {
    const auto ctx = testing::reference_context();
    const double y = 3.0;
    for (double a : {2.0, 2.4, 2.7, 2.9, 3.0})
        for (double x : {2.1, 2.8, 3.2, 3.9, 5.0}) {
            if (x < a) continue;
            const double w1 = eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, x, a);
            const double w2 = eval_Wrq_alt(ctx.W, ctx.Wq, ctx.q, y, x, a);
            const double w3 = eval_Wrq_quadrature(ctx.W, ctx.Wq, ctx.q, y, x, a);
            CHECK_THAT(w1, WithinRel(w2, 1e-9));
            CHECK_THAT(w1, WithinRel(w3, 1e-9));
            auto f = [&](double t) { return eval_Wrq(ctx.W, ctx.Wq, ctx.q, y, t, a); };
            if (x > a + 1e-3 && std::abs(x - y) > 1e-3)
                CHECK_THAT(eval_Wrq_dx(ctx.W, ctx.Wq, ctx.q, y, x, a), WithinRel(testing::central_diff(f, x, 1e-6), 1e-6));
        }
}

TEST_CASE("W^(r,q)(x, a) reduces to W^(r+q) below y", "[scale]") {
    const auto ctx = testing::reference_context();
    CHECK_THAT(eval_Wrq(ctx.W, ctx.Wq, ctx.q, 3.0, 2.8, 2.1), WithinRel(ctx.Wq(0.7), 1e-12));
}

TEST_CASE("exponential-sum helpers", "[scale]") {
    ExpSum a;
    a.add({2.0, 0.0}, {-0.5, 0.0});
    a.add({1.0, 0.5}, {0.3, 1.0});
    a.add({1.0, -0.5}, {0.3, -1.0});
    ExpSum b;
    b.add({0.7, 0.0}, {1.1, 0.0});
    for (double t : {0.0, 0.4, 1.3}) {
        CHECK_THAT(a.shifted(0.25)(t), WithinRel(a(t + 0.25), 1e-13));
        CHECK_THAT(a.reflected()(t), WithinRel(a(-t), 1e-13));
        CHECK_THAT(a.derivative()(t), WithinRel(testing::central_diff([&](double s) { return a(s); }, t, 1e-6), 1e-8));
    }
    const double L = 1.7;
    const auto q1 = numerics::integrate([&](double t) { return a(t) * b(t); }, 0.0, L, 1e-13);
    CHECK_THAT(integrate_product(a, b, L), WithinRel(q1.value, 1e-12));
    const auto q2 = numerics::integrate([&](double t) { return a(t); }, 0.0, L, 1e-13);
    CHECK_THAT(integrate(a, L), WithinRel(q2.value, 1e-12));
}
