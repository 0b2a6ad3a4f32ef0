#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrq {

/// Integration domain [a,b] with a < b, both finite.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!std::isfinite(a_) || !std::isfinite(b_) || !(a_ < b_))
            throw std::domain_error("Interval requires finite a < b");
    }

    double width() const { return b - a; }
    double midpoint() const { return 0.5 * (a + b); }
    bool contains(double t) const { return a <= t && t <= b; }
};

/// Free parameters of the corrected rule: the split point x and the
/// branch offsets alpha, beta of the piecewise kernel.
///
/// The kernel formula extends continuously to alpha == beta (all three
/// branches coincide), so alpha <= beta is admitted, which covers the
/// corrected-trapezoid configuration alpha = beta = (a+b)/2.
struct RuleParams {
    double x;
    double alpha;
    double beta;
};

inline void validate_params(const Interval& iv, const RuleParams& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.alpha) || !std::isfinite(p.beta))
        throw std::domain_error("RuleParams must be finite");
    if (!(iv.a <= p.alpha && p.alpha <= p.beta && p.beta <= iv.b))
        throw std::domain_error("RuleParams requires a <= alpha <= beta <= b");
    if (!(iv.a <= p.x && p.x <= iv.midpoint()))
        throw std::domain_error("RuleParams requires a <= x <= (a+b)/2");
}

/// The three readings of the kernel's "infinity norm" that appear in the
/// source material: the true sup norm, the full integral (k >= 0 makes it
/// the L1 norm), and the integral over the right half-range.
struct KernelNorms {
    double sup;
    double l1;
    double half_range;
};

/// Piecewise kernel
///   k(t) = (t - alpha)^2          for a <= t < x
///        = (t - (alpha+beta)/2)^2 for x <= t <= a+b-x
///        = (t - beta)^2           for a+b-x < t <= b.
/// Points exactly at x or a+b-x take the middle branch. k is generally
/// discontinuous at the two breakpoints.
inline double kernel_eval(const Interval& iv, const RuleParams& p, double t) {
    validate_params(iv, p);
    if (!(iv.a <= t && t <= iv.b))
        throw std::domain_error("kernel_eval: t outside [a,b]");
    const double mirror = iv.a + iv.b - p.x;
    double c;
    if (t < p.x)
        c = p.alpha;
    else if (t <= mirror)
        c = 0.5 * (p.alpha + p.beta);
    else
        c = p.beta;
    const double d = t - c;
    return d * d;
}

namespace detail {

// integral of (t-c)^2 over [lo,hi]
inline double quad_segment(double lo, double hi, double c) {
    const double u = hi - c, v = lo - c;
    return (u * u * u - v * v * v) / 3.0;
}

} // namespace detail

/// Exact norms from per-branch endpoint algebra; no sampling.
/// Each branch is a convex quadratic, so its max over a subinterval sits
/// at an endpoint; degenerate (empty) branches contribute endpoint values
/// that are always dominated under the parameter constraints.
inline KernelNorms kernel_norms(const Interval& iv, const RuleParams& p) {
    validate_params(iv, p);
    const double a = iv.a, b = iv.b;
    const double x = p.x, mirror = a + b - x;
    const double m = 0.5 * (p.alpha + p.beta);

    const auto sq = [](double d) { return d * d; };
    const double sup = std::max({sq(a - p.alpha), sq(x - p.alpha),
                                 sq(x - m), sq(mirror - m),
                                 sq(mirror - p.beta), sq(b - p.beta)});

    const double l1 = detail::quad_segment(a, x, p.alpha) +
                      detail::quad_segment(x, mirror, m) +
                      detail::quad_segment(mirror, b, p.beta);

    // (a+b)/2 <= a+b-x always, so the half range only sees branches 2 and 3
    const double half_range = detail::quad_segment(iv.midpoint(), mirror, m) +
                              detail::quad_segment(mirror, b, p.beta);

    return {sup, l1, half_range};
}

/// True iff alpha + beta = a + b up to a tight structural tolerance.
/// Symmetric parameters make the kernel even about (a+b)/2.
inline bool params_symmetric(const Interval& iv, const RuleParams& p) {
    validate_params(iv, p);
    const double tol_sym = 1e-12 * (1.0 + std::abs(iv.a) + std::abs(iv.b));
    return std::abs((p.alpha + p.beta) - (iv.a + iv.b)) <= tol_sym;
}

} // namespace corrq
