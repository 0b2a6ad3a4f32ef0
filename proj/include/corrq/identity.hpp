#pragma once

#include <cmath>
#include <functional>

#include <corrq/integrand.hpp>
#include <corrq/kernel.hpp>
#include <corrq/oracle.hpp>

namespace corrq {

/// Even/odd split of a function about the interval midpoint:
///   even(t) = (g(t) + g(a+b-t)) / 2,  odd(t) = (g(t) - g(a+b-t)) / 2.
struct EvenOddParts {
    std::function<double(double)> even;
    std::function<double(double)> odd;
    std::function<double(double)> base;
};

inline EvenOddParts decompose(std::function<double(double)> g, const Interval& iv) {
    const double s = iv.a + iv.b;
    return {
        [g, s](double t) { return 0.5 * (g(t) + g(s - t)); },
        [g, s](double t) { return 0.5 * (g(t) - g(s - t)); },
        std::move(g)};
}

/// Integral of fn over iv: analytic when available, oracle otherwise.
inline double integral_of(const Integrand& fn, const Interval& iv,
                          const OracleConfig& cfg = {}, bool* used_analytic = nullptr) {
    if (fn.analytic_integral) {
        if (used_analytic)
            *used_analytic = true;
        return fn.analytic_integral(iv.a, iv.b);
    }
    if (used_analytic)
        *used_analytic = false;
    return integrate_reference(fn.f, iv, cfg).value;
}

struct IdentityEval {
    double lhs;
    double rhs;
    double residual;
    bool integral_analytic; // provenance of the LHS integral term
};

/// Left side of the generalized identity:
///   2*Int f - (beta-alpha)[f(x) + f(a+b-x)]
///   + (b-beta)^2 f'(b) - (a-alpha)^2 f'(a)
///   + 2(a-alpha) f(a) - 2(b-beta) f(b)
///   + (beta-alpha)[(x - (3a+B)/4) f'(x) + (a+b-x - (a+3B)/4) f'(a+b-x)]
/// with the derivative offsets (3*alpha+beta)/4 and (alpha+3*beta)/4.
inline double identity_lhs(const Integrand& fn, const Interval& iv, const RuleParams& p,
                           const OracleConfig& cfg = {}, bool* used_analytic = nullptr) {
    validate_params(iv, p);
    const double a = iv.a, b = iv.b;
    const double x = p.x, mirror = a + b - x;
    const double d = p.beta - p.alpha;
    const double intf = integral_of(fn, iv, cfg, used_analytic);
    return 2.0 * intf - d * (fn.f(x) + fn.f(mirror)) +
           (b - p.beta) * (b - p.beta) * fn.df(b) -
           (a - p.alpha) * (a - p.alpha) * fn.df(a) +
           2.0 * (a - p.alpha) * fn.f(a) - 2.0 * (b - p.beta) * fn.f(b) +
           d * ((x - (3.0 * p.alpha + p.beta) / 4.0) * fn.df(x) +
                (mirror - (p.alpha + 3.0 * p.beta) / 4.0) * fn.df(mirror));
}

/// Right side Int_a^b k(a,b,t) f''(t) dt, integrated with the panel grid
/// split at the kernel breakpoints x and a+b-x.
inline double identity_rhs(const Integrand& fn, const Interval& iv, const RuleParams& p,
                           const OracleConfig& cfg = {}) {
    validate_params(iv, p);
    const auto g = [&fn, &iv, &p](double t) { return kernel_eval(iv, p, t) * fn.d2f(t); };
    return integrate_reference(g, iv, cfg, {p.x, iv.a + iv.b - p.x}).value;
}

inline IdentityEval evaluate_identity(const Integrand& fn, const Interval& iv,
                                      const RuleParams& p, const OracleConfig& cfg = {}) {
    bool analytic = false;
    const double lhs = identity_lhs(fn, iv, p, cfg, &analytic);
    const double rhs = identity_rhs(fn, iv, p, cfg);
    return {lhs, rhs, std::abs(lhs - rhs), analytic};
}

inline double identity_residual(const Integrand& fn, const Interval& iv, const RuleParams& p,
                                const OracleConfig& cfg = {}) {
    return evaluate_identity(fn, iv, p, cfg).residual;
}

/// Specialization alpha = a, beta = b (endpoint-anchored form).
inline double corollary1_lhs(const Integrand& fn, const Interval& iv, double x,
                             const OracleConfig& cfg = {}) {
    const double a = iv.a, b = iv.b;
    const double mirror = a + b - x;
    const double intf = integral_of(fn, iv, cfg);
    return 2.0 * intf - (b - a) * (fn.f(x) + fn.f(mirror)) +
           (b - a) * (x - (3.0 * a + b) / 4.0) * (fn.df(x) - fn.df(mirror));
}

/// Specialization alpha = beta = (a+b)/2 (corrected trapezoid form).
inline double corollary2_lhs(const Integrand& fn, const Interval& iv,
                             const OracleConfig& cfg = {}) {
    const double a = iv.a, b = iv.b, w = b - a;
    const double intf = integral_of(fn, iv, cfg);
    return 2.0 * intf + 0.25 * w * w * (fn.df(b) - fn.df(a)) - w * (fn.f(a) + fn.f(b));
}

} // namespace corrq
