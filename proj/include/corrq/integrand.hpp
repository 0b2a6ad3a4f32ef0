#pragma once

#include <functional>
#include <string>
#include <utility>

#include <corrq/kernel.hpp>

namespace corrq {

enum class TriState { asserted, denied, unknown };

struct ConvexityFlags {
    TriState f_convex = TriState::unknown;
    TriState fprime_convex = TriState::unknown;
    TriState abs_f2_convex = TriState::unknown;
};

/// A twice-differentiable integrand with caller-supplied derivatives and
/// optional analytic metadata. Derivatives are trusted after the one-time
/// finite-difference check in the oracle module; nothing here differentiates
/// numerically.
struct Integrand {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    Interval domain;
    ConvexityFlags flags;

    /// Optional: exact integral of f over [lo,hi] within domain.
    std::function<double(double, double)> analytic_integral;

    /// Optional: a valid upper bound for sup |f''| over a subinterval
    /// (set for builtins whose |f''| attains its max at an endpoint).
    std::function<double(const Interval&)> d2_abs_max;

    std::string label;
};

} // namespace corrq
