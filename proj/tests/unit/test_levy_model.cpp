#include <catch_amalgamated.hpp>

#include "../support/fixtures.hpp"
#include "omega/error.hpp"
#include "omega/levy_model.hpp"

using namespace omega;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Laplace exponent of the reference model at one", "[levy]") {
    const auto m = testing::reference_model();
    // 0.3 + 0.02 + 0.6 (1/2 - 1)
    CHECK_THAT(laplace_exponent(m, 1.0), WithinAbs(0.02, 1e-12));
    CHECK(laplace_exponent(m, 0.0) == 0.0);
}

TEST_CASE("psi derivatives agree with finite differences", "[levy]") {
    for (const auto& m : {testing::reference_model(), testing::two_phase_model(), testing::bv_model()}) {
        for (double b : {0.1, 0.7, 2.0, 5.0}) {
            auto f = [&](double t) { return m.psi(t); };
            CHECK_THAT(m.dpsi(b), WithinRel(testing::central_diff(f, b, 1e-5), 1e-8));
            CHECK_THAT(m.d2psi(b), WithinRel(testing::central_diff2(f, b, 1e-3), 1e-5));
        }
    }
}

TEST_CASE("complex psi matches the real one on the real axis", "[levy]") {
    const auto m = testing::two_phase_model();
    for (double b : {0.3, 1.7})
        CHECK_THAT(m.psi(std::complex<double>(b, 0.0)).real(), WithinRel(m.psi(b), 1e-14));
}

TEST_CASE("Phi inverts psi and is the largest root", "[levy]") {
    for (const auto& m : {testing::reference_model(), testing::two_phase_model(), testing::bv_model()}) {
        for (double rate : {0.01, 0.05, 1.05}) {
            const double p = phi(m, rate);
            CHECK_THAT(m.psi(p), WithinAbs(rate, 1e-12));
            CHECK(m.dpsi(p) > 0.0);
            CHECK_THAT(phi_prime(m, rate), WithinRel(1.0 / m.dpsi(p), 1e-12));
        }
        CHECK(phi0(m) >= 0.0);
    }
}

TEST_CASE("cleared polynomial vanishes at the roots of psi - rate", "[levy]") {
    const auto m = testing::two_phase_model();
    const auto c = m.cleared_polynomial(0.05);
    const double p = phi(m, 0.05);
    CHECK(std::abs(numerics::polyval(c, {p, 0.0})) < 1e-10);
}

TEST_CASE("invalid models and arguments are rejected", "[levy]") {
    auto kind_of = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::ConfigError;
    };
    CHECK(kind_of([] { LevyModel(0.3, -0.1, {0.6, {{1.0, 1.0}}}); }) == ErrorKind::InvalidModel);
    CHECK(kind_of([] { LevyModel(0.3, 0.2, {0.6, {{1.0, -1.0}}}); }) == ErrorKind::InvalidModel);
    CHECK(kind_of([] { LevyModel(-0.3, 0.0, {0.6, {{1.0, 1.0}}}); }) == ErrorKind::InvalidModel);
    CHECK(kind_of([] { laplace_exponent(testing::reference_model(), -0.5); }) == ErrorKind::InvalidBeta);
}

TEST_CASE("jump density integrates to the intensity", "[levy]") {
    const auto m = testing::two_phase_model();
    const auto res = numerics::integrate([&](double z) { return m.jump_density(-z); }, 0.0, INFINITY, 1e-12);
    CHECK_THAT(res.value, WithinRel(0.8, 1e-10));
}
