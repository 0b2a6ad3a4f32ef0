#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include <corrq/builtins.hpp>
#include <corrq/kernel.hpp>
#include <corrq/random.hpp>

namespace corrq::testing {

inline RuleParams draw_valid_params(const Interval& iv, std::mt19937_64& rng) {
    const double x = uniform(rng, iv.a, iv.midpoint());
    const double alpha = uniform(rng, iv.a, iv.b);
    const double beta = uniform(rng, alpha, iv.b);
    return {x, alpha, beta};
}

/// The identity-suite family: smooth builtins paired with the interval they
/// are exercised on.
inline std::vector<std::pair<Integrand, Interval>> identity_suite() {
    return {
        {builtin_poly({0.0, 0.0, 1.0}), Interval{0.0, 1.0}},
        {builtin_poly({0.0, 0.0, 0.0, 1.0}), Interval{0.0, 1.0}},
        {builtin_exp(), Interval{0.0, 1.0}},
        {builtin_power(2.0), Interval{1.0, 2.0}},
        {builtin_power(3.0), Interval{1.0, 2.0}},
        {builtin_power(4.0), Interval{1.0, 2.0}},
        {builtin_recip(), Interval{1.0, 2.0}},
        {builtin_neglog(), Interval{1.0, 2.0}},
    };
}

} // namespace corrq::testing
