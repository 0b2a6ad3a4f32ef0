#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <corrq/builtins.hpp>
#include <corrq/identity.hpp>

#include "test_helpers.hpp"

using namespace corrq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("decompose examples") {
    const Interval unit{0.0, 1.0};
    const auto linear = decompose([](double t) { return t; }, unit);
    CHECK_THAT(linear.even(0.3), WithinAbs(0.5, 1e-15));
    CHECK_THAT(linear.odd(0.3), WithinAbs(-0.2, 1e-15));

    const auto even_already =
        decompose([](double t) { return (t - 0.5) * (t - 0.5); }, unit);
    CHECK_THAT(even_already.odd(0.123), WithinAbs(0.0, 1e-15));

    const auto cubic = decompose([](double t) { return t * t * t; }, Interval{1.0, 2.0});
    CHECK_THAT(cubic.even(1.25), WithinAbs(3.65625, 1e-12));
}

TEST_CASE("decompose round-trip and symmetry on a grid") {
    const Interval iv{-1.0, 2.5};
    const auto g = [](double t) { return std::exp(t) + 0.5 * t * t * t; };
    const auto parts = decompose(g, iv);
    for (int i = 0; i <= 1000; ++i) {
        const double t = iv.a + iv.width() * i / 1000.0;
        const double mirror = iv.a + iv.b - t;
        const double base = g(t);
        REQUIRE_THAT(parts.even(t) + parts.odd(t), WithinAbs(base, 1e-12 * (1.0 + std::abs(base))));
        REQUIRE_THAT(parts.even(mirror), WithinAbs(parts.even(t), 1e-12 * (1.0 + std::abs(parts.even(t)))));
        REQUIRE_THAT(parts.odd(mirror), WithinAbs(-parts.odd(t), 1e-12 * (1.0 + std::abs(parts.odd(t)))));
    }
}

TEST_CASE("identity sides on worked examples") {
    const Integrand cubic = builtin_power(3.0);
    const Interval iv12{1.0, 2.0};
    const RuleParams trap{1.2, 1.5, 1.5};
    CHECK_THAT(identity_lhs(cubic, iv12, trap), WithinAbs(0.75, 1e-12));
    CHECK_THAT(identity_rhs(cubic, iv12, trap), WithinAbs(0.75, 1e-10));

    const Integrand quad = builtin_poly({0.0, 0.0, 1.0});
    const Interval unit{0.0, 1.0};
    const RuleParams full{0.25, 0.0, 1.0};
    CHECK_THAT(identity_lhs(quad, unit, full), WithinAbs(1.0 / 24.0, 1e-12));
    CHECK_THAT(identity_rhs(quad, unit, full), WithinAbs(1.0 / 24.0, 1e-10));

    const Integrand line = builtin_poly({2.0, -3.0});
    CHECK_THAT(identity_lhs(line, unit, full), WithinAbs(0.0, 1e-14));
    CHECK_THAT(identity_residual(line, unit, full), WithinAbs(0.0, 1e-14));
}

TEST_CASE("identity residual across the builtin family") {
    std::mt19937_64 rng(2026);
    for (const auto& [fn, iv] : testing::identity_suite()) {
        INFO(fn.label);
        for (int draw = 0; draw < 20; ++draw) {
            const RuleParams p = testing::draw_valid_params(iv, rng);
            const IdentityEval ev = evaluate_identity(fn, iv, p);
            REQUIRE(ev.residual <= 1e-8 * (1.0 + std::abs(ev.lhs)));
        }
    }
}

TEST_CASE("identity residual with oracle-sourced integral") {
    Integrand fn = builtin_exp();
    fn.analytic_integral = nullptr; // force the oracle path
    const Interval unit{0.0, 1.0};
    const RuleParams p{0.3, 0.2, 0.9};
    const IdentityEval ev = evaluate_identity(fn, unit, p);
    CHECK_FALSE(ev.integral_analytic);
    CHECK(ev.residual <= 1e-8 * (1.0 + std::abs(ev.lhs)));
}

TEST_CASE("corollary specializations match the general identity") {
    std::mt19937_64 rng(5);
    for (const auto& [fn, iv] : testing::identity_suite()) {
        INFO(fn.label);
        for (int draw = 0; draw < 10; ++draw) {
            const double x = uniform(rng, iv.a, iv.midpoint());
            const double general1 = identity_lhs(fn, iv, {x, iv.a, iv.b});
            const double liu = corollary1_lhs(fn, iv, x);
            REQUIRE_THAT(liu, WithinAbs(general1, 1e-12 * (1.0 + std::abs(general1))));

            const double m = iv.midpoint();
            const double general2 = identity_lhs(fn, iv, {x, m, m});
            const double trap = corollary2_lhs(fn, iv);
            REQUIRE_THAT(trap, WithinAbs(general2, 1e-12 * (1.0 + std::abs(general2))));
        }
    }
}
