#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include <corrq/kernel.hpp>
#include <corrq/oracle.hpp>

#include "test_helpers.hpp"

using namespace corrq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// independent maximizer: dense grid plus repeated local refinement
double sampled_sup(const Interval& iv, const RuleParams& p) {
    const int n = 10000;
    double best = -1.0, best_t = iv.a;
    for (int i = 0; i <= n; ++i) {
        const double t = std::min(iv.b, iv.a + iv.width() * i / n);
        const double v = kernel_eval(iv, p, t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    double step = iv.width() / n;
    for (int stage = 0; stage < 3; ++stage) {
        const double lo = std::max(iv.a, best_t - step);
        const double hi = std::min(iv.b, best_t + step);
        for (int i = 0; i <= 1000; ++i) {
            const double t = std::min(hi, lo + (hi - lo) * i / 1000.0);
            const double v = kernel_eval(iv, p, t);
            if (v > best) {
                best = v;
                best_t = t;
            }
        }
        step = (hi - lo) / 1000.0;
    }
    return best;
}

} // namespace

TEST_CASE("kernel_eval branch values") {
    const Interval iv{0.0, 1.0};
    const RuleParams p{0.25, 0.0, 1.0};
    CHECK_THAT(kernel_eval(iv, p, 0.1), WithinAbs(0.01, 1e-15));
    CHECK_THAT(kernel_eval(iv, p, 0.5), WithinAbs(0.0, 1e-15));
    CHECK_THAT(kernel_eval(iv, p, 0.9), WithinAbs(0.01, 1e-15));
    // breakpoints take the middle branch
    CHECK_THAT(kernel_eval(iv, p, 0.25), WithinAbs(0.0625, 1e-15));
    CHECK_THAT(kernel_eval(iv, p, 0.75), WithinAbs(0.0625, 1e-15));
}

TEST_CASE("kernel_eval rejects bad inputs") {
    const Interval iv{0.0, 1.0};
    CHECK_THROWS_AS(kernel_eval(iv, {0.25, 0.0, 1.0}, 1.5), std::domain_error);
    CHECK_THROWS_AS(kernel_eval(iv, {0.25, 0.8, 0.2}, 0.5), std::domain_error);
    CHECK_THROWS_AS(kernel_eval(iv, {0.75, 0.0, 1.0}, 0.5), std::domain_error);
    CHECK_THROWS_AS(Interval(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(Interval(2.0, 1.0), std::domain_error);
}

TEST_CASE("kernel_norms closed forms") {
    const Interval iv{0.0, 1.0};
    const KernelNorms n = kernel_norms(iv, {0.25, 0.0, 1.0});
    CHECK_THAT(n.l1, WithinRel(1.0 / 48.0, 1e-14));
    CHECK_THAT(n.sup, WithinAbs(0.0625, 1e-15));
    CHECK_THAT(n.half_range, WithinRel(1.0 / 96.0, 1e-14));

    const KernelNorms m = kernel_norms(iv, {0.3, 0.5, 0.5});
    CHECK_THAT(m.sup, WithinAbs(0.25, 1e-15));
    CHECK_THAT(m.half_range, WithinRel(1.0 / 24.0, 1e-14));
}

TEST_CASE("params_symmetric") {
    const Interval iv{0.0, 1.0};
    CHECK(params_symmetric(iv, {0.25, 0.0, 1.0}));
    CHECK(params_symmetric(iv, {0.25, 0.5, 0.5}));
    CHECK_FALSE(params_symmetric(iv, {0.25, 0.1, 0.8}));
}

TEST_CASE("kernel properties over seeded draws") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = uniform(rng, -3.0, 3.0);
        const Interval iv{a, a + uniform(rng, 0.1, 3.0)};
        RuleParams p = testing::draw_valid_params(iv, rng);
        if (trial % 3 == 0) {
            // force symmetric parameters
            p.beta = iv.a + iv.b - p.alpha;
            if (p.beta < p.alpha)
                std::swap(p.alpha, p.beta);
        }

        for (int i = 0; i <= 50; ++i) {
            const double t = std::min(iv.b, iv.a + iv.width() * i / 50.0);
            const double v = kernel_eval(iv, p, t);
            REQUIRE(v >= 0.0);
            if (params_symmetric(iv, p)) {
                const double tm = std::clamp(iv.a + iv.b - t, iv.a, iv.b);
                const double mirrored = kernel_eval(iv, p, tm);
                REQUIRE_THAT(mirrored, WithinAbs(v, 1e-12 * (1.0 + v)));
            }
        }

        const KernelNorms n = kernel_norms(iv, p);
        REQUIRE(n.sup > 0.0);
        REQUIRE(n.l1 > 0.0);
        REQUIRE(n.half_range > 0.0);
        REQUIRE(n.l1 <= n.sup * iv.width() * (1.0 + 1e-14));
        if (params_symmetric(iv, p))
            REQUIRE_THAT(n.half_range, WithinRel(0.5 * n.l1, 1e-12));

        // numeric oracles
        const auto k = [&](double t) { return kernel_eval(iv, p, t); };
        const auto l1_ref =
            integrate_reference(k, iv, {1e-11, 100000}, {p.x, iv.a + iv.b - p.x});
        REQUIRE_THAT(n.l1, WithinRel(l1_ref.value, 1e-9));
        REQUIRE_THAT(n.sup, WithinAbs(sampled_sup(iv, p), 1e-6));
    }
}

TEST_CASE("special-configuration norm identities") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = uniform(rng, -2.0, 2.0);
        const Interval iv{a, a + uniform(rng, 0.2, 2.5)};
        const double x = uniform(rng, iv.a, iv.midpoint());

        // alpha = a, beta = b matches the printed l1 formula
        const KernelNorms full = kernel_norms(iv, {x, iv.a, iv.b});
        const double u = x - iv.a, v = iv.midpoint() - x;
        REQUIRE_THAT(full.l1, WithinRel(2.0 / 3.0 * (u * u * u + v * v * v),
                                        1e-12));

        // alpha = beta = midpoint matches (b-a)^3/24 on the half range
        const double m = iv.midpoint();
        const KernelNorms mid = kernel_norms(iv, {x, m, m});
        REQUIRE_THAT(mid.half_range, WithinRel(std::pow(iv.width(), 3) / 24.0, 1e-12));
    }
}
