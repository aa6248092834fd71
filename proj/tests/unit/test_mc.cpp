#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "../support/fixtures.hpp"
#include "omega/error.hpp"
#include "omega/mc.hpp"
#include "omega/rng.hpp"
#include "omega/thresholds.hpp"

using namespace omega;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

mc::PathConfig small_cfg(std::size_t n = 20000) {
    mc::PathConfig c;
    c.n_paths = n;
    return c;
}

double zscore(const mc::McEstimate& e, double want) { return (e.mean - want) / e.std_error; }

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors", "[mc][rng]") {
    using rng::philox4x32;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == rng::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          rng::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          rng::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams: ranges, moments and independence of domains", "[mc][rng]") {
    rng::Stream s(7, 3, rng::Domain::Diffusion);
    double m1 = 0.0;
    double m2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        const double z = s.normal();
        m1 += z;
        m2 += z * z;
    }
    CHECK(std::abs(m1 / n) < 0.01);
    CHECK(std::abs(m2 / n - 1.0) < 0.01);
    rng::Stream a(7, 3, rng::Domain::Jumps);
    rng::Stream b(7, 3, rng::Domain::Diffusion);
    rng::Stream c(7, 3, rng::Domain::Diffusion);
    CHECK(a.next_u32() != b.next_u32());
    c.next_u32();
    CHECK(b.next_u32() == c.next_u32());
}

TEST_CASE("deterministic drift without noise or jumps", "[mc]") {
    const LevyModel m(0.3, 0.0, HyperExpJumps{0.0, {}});
    const mc::JumpSampler js(m.jumps());
    mc::PathStreams ps(js, 1, 0);
    mc::SimState s{1.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 1000; ++i) s = mc::simulate_step(m, js, s, 1e-3, -100.0, 0.05, 1.0, ps);
    CHECK_THAT(s.x, WithinAbs(1.0 + 0.3 * s.t, 1e-12));
    CHECK_THAT(s.A, WithinAbs(0.05 * s.t, 1e-12));
}

TEST_CASE("no clock charge far above the level", "[mc]") {
    const LevyModel m(0.1, 0.2, HyperExpJumps{0.0, {}});
    const mc::JumpSampler js(m.jumps());
    mc::PathStreams ps(js, 2, 5);
    mc::SimState s{10.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 2000; ++i) s = mc::simulate_step(m, js, s, 1e-3, -100.0, 0.05, 1.0, ps);
    CHECK_THAT(s.A, WithinAbs(0.05 * s.t, 1e-12));
    CHECK(s.occupation == 0.0);
}

TEST_CASE("clock bound holds along simulated paths", "[mc]") {
    const auto m = testing::reference_model();
    const mc::JumpSampler js(m.jumps());
    for (std::uint64_t p = 0; p < 50; ++p) {
        mc::PathStreams ps(js, 11, p);
        mc::SimState s{3.0, 0.0, 0.0, 0.0};
        for (int i = 0; i < 3000; ++i) {
            s = mc::simulate_step(m, js, s, 1e-3, 3.0, 0.05, 1.0, ps);
            REQUIRE(s.A >= 0.05 * s.t - 1e-12);
            REQUIRE(s.A <= 1.05 * s.t + 1e-12);
        }
    }
}

TEST_CASE("occupation fraction rules", "[mc]") {
    CHECK(mc::linear_fraction_below(0.0, 2.0, 0.5) == 0.25);
    CHECK(mc::linear_fraction_below(2.0, 0.0, 0.5) == 0.25);
    CHECK(mc::trapezoid_fraction_below(0.0, 2.0, 0.5) == 0.5);
    CHECK(mc::trapezoid_fraction_below(0.0, 0.1, 0.5) == 1.0);
}

TEST_CASE("tilted model has exponent psi(beta + 1) - psi(1)", "[mc]") {
    for (const auto& m : {testing::reference_model(), testing::two_phase_model()}) {
        const auto t = mc::esscher_one(m);
        for (double b : {0.0, 0.5, 2.0}) CHECK_THAT(t.psi(b), WithinAbs(m.psi(b + 1.0) - m.psi(1.0), 1e-13));
    }
}

TEST_CASE("trivial estimators", "[mc]") {
    const auto ctx = testing::reference_context();
    const auto e = mc::estimate_upcross_discount(ctx, 3.0, 3.0, 2.0, small_cfg(100));
    CHECK(e.mean == 1.0);
    CHECK(e.std_error == 0.0);
    StoppingRegion ray{{{3.0, INFINITY}}, RegionShape::Ray};
    const auto f = mc::estimate_region_strategy(ctx, 3.5, 2.0, ray, small_cfg(100));
    CHECK_THAT(f.mean, WithinRel(std::exp(3.5) - ctx.K, 1e-15));
    CHECK(f.std_error == 0.0);
}

TEST_CASE("up-crossing discount with the clock always on", "[mc]") {
    const auto ctx = testing::reference_context();
    const double x = 1.0;
    const double z = 1.6;
    const auto e = mc::estimate_upcross_discount(ctx, x, z, 5.0, small_cfg());
    CHECK(std::abs(zscore(e, std::exp(ctx.phi_rq * (x - z)))) <= 3.0);
    CHECK(e.truncation_bound < 1e-7);
}

TEST_CASE("reproducible and independent of threading", "[mc]") {
    const auto ctx = testing::reference_context();
    auto c = small_cfg(4000);
    const auto a = mc::estimate_upcross_discount(ctx, 3.2, 3.9, 3.0, c);
    const auto b = mc::estimate_upcross_discount(ctx, 3.2, 3.9, 3.0, c);
    c.parallel = false;
    const auto s = mc::estimate_upcross_discount(ctx, 3.2, 3.9, 3.0, c);
    CHECK(same_bits(a.mean, b.mean));
    CHECK(same_bits(a.mean, s.mean));
    CHECK(same_bits(a.std_error, s.std_error));
    c.seed += 1;
    CHECK_FALSE(same_bits(mc::estimate_upcross_discount(ctx, 3.2, 3.9, 3.0, c).mean, s.mean));
}

TEST_CASE("antithetic sampling does not inflate the standard error", "[mc]") {
    const auto ctx = testing::reference_context();
    auto c = small_cfg(100000);
    const auto plain = mc::estimate_upcross_discount(ctx, 3.2, 3.9, 3.0, c);
    c.antithetic = true;
    const auto anti = mc::estimate_upcross_discount(ctx, 3.2, 3.9, 3.0, c);
    CHECK(anti.std_error <= 1.05 * plain.std_error);
    CHECK(std::abs(anti.mean - plain.mean) <= 3.0 * std::hypot(anti.std_error, plain.std_error));
}

TEST_CASE("halving the time step moves the estimate by less than two standard errors", "[mc]") {
    const auto ctx = testing::reference_context();
    auto c = small_cfg(100000);
    const auto a = mc::estimate_upcross_discount(ctx, 3.2, 3.9, 3.0, c);
    c.dt *= 0.5;
    const auto b = mc::estimate_upcross_discount(ctx, 3.2, 3.9, 3.0, c);
    CHECK(std::abs(a.mean - b.mean) < 2.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("two-sided estimate with a = y against the exit identity", "[mc]") {
    const auto ctx = testing::reference_context();
    const auto e = mc::estimate_two_sided(ctx, 3.4, 3.0, 3.0, 4.0, small_cfg());
    CHECK(std::abs(zscore(e, testing::exit_value_above_level(ctx, 3.0, 4.0, 3.4))) <= 3.0);
}

TEST_CASE("martingale down-exit with no upper barrier", "[mc][martingale]") {
    const auto ctx = testing::reference_context(0.02);
    const double y = find_y_infinity(ctx) + 1.0;
    const double a = ctx.k_under + 0.3;
    const double x = a + 0.4;
    const auto e = mc::estimate_two_sided(ctx, x, y, a, INFINITY, small_cfg());
    CHECK(std::abs(zscore(e, down_exit_expectation(ctx, y, a, x))) <= 3.0);
}

TEST_CASE("never-stop value under the tilted measure", "[mc][martingale]") {
    const auto ctx = testing::reference_context(0.02);
    const double y = find_y_infinity(ctx);
    const auto e = mc::estimate_never_stop(ctx, 2.0, y, small_cfg(10000));
    CHECK(std::abs(zscore(e, V_infinity_fn(ctx, y, 2.0))) <= 3.0);
    CHECK_THROWS_AS(mc::estimate_never_stop(testing::reference_context(), 2.0, y, small_cfg(10)), Error);
}

TEST_CASE("bounded variation paths use exact crossing fractions", "[mc]") {
    const auto ctx = make_context(testing::bv_model(), 0.05, 1.0, 10.0);
    const double y = 2.8;
    const auto e = mc::estimate_upcross_discount(ctx, 2.7, 3.2, y, small_cfg());
    CHECK(std::abs(zscore(e, ctx.I(2.7 - y) / ctx.I(3.2 - y))) <= 3.0);
}
