#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <corrq/integrand.hpp>

namespace corrq {

namespace detail {

inline const Interval kPositiveDomain{1e-12, 1e12};
inline const Interval kRealDomain{-1e8, 1e8};

inline double poly_eval(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;)
        v = v * t + c[i];
    return v;
}

inline std::vector<double> poly_derive(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i)
        d.push_back(static_cast<double>(i) * c[i]);
    if (d.empty())
        d.push_back(0.0);
    return d;
}

inline std::vector<double> poly_antiderive(const std::vector<double>& c) {
    std::vector<double> p{0.0};
    for (std::size_t i = 0; i < c.size(); ++i)
        p.push_back(c[i] / static_cast<double>(i + 1));
    return p;
}

} // namespace detail

inline Integrand builtin_power(double p) {
    if (!std::isfinite(p))
        throw std::domain_error("builtin_power: p must be finite");
    const double c2 = p * (p - 1.0);
    ConvexityFlags flags;
    flags.f_convex = (p >= 1.0 || p <= 0.0) ? TriState::asserted : TriState::denied;
    const double c3 = p * (p - 1.0) * (p - 2.0);
    flags.fprime_convex = (c3 >= 0.0) ? TriState::asserted : TriState::denied;
    flags.abs_f2_convex =
        (c2 == 0.0 || p <= 2.0 || p >= 3.0) ? TriState::asserted : TriState::denied;
    Integrand fn{
        [p](double t) { return std::pow(t, p); },
        [p](double t) { return p * std::pow(t, p - 1.0); },
        [p, c2](double t) { return c2 * std::pow(t, p - 2.0); },
        detail::kPositiveDomain,
        flags,
        [p](double lo, double hi) {
            if (p == -1.0)
                return std::log(hi) - std::log(lo);
            return (std::pow(hi, p + 1.0) - std::pow(lo, p + 1.0)) / (p + 1.0);
        },
        [p, c2](const Interval& iv) {
            return std::abs(c2) * std::max(std::pow(iv.a, p - 2.0), std::pow(iv.b, p - 2.0));
        },
        "power(" + std::to_string(p) + ")"};
    return fn;
}

inline Integrand builtin_recip() {
    ConvexityFlags flags{TriState::asserted, TriState::denied, TriState::asserted};
    return Integrand{
        [](double t) { return 1.0 / t; },
        [](double t) { return -1.0 / (t * t); },
        [](double t) { return 2.0 / (t * t * t); },
        detail::kPositiveDomain,
        flags,
        [](double lo, double hi) { return std::log(hi) - std::log(lo); },
        [](const Interval& iv) { return 2.0 / (iv.a * iv.a * iv.a); },
        "recip"};
}

inline Integrand builtin_negrecip() {
    ConvexityFlags flags{TriState::denied, TriState::asserted, TriState::asserted};
    return Integrand{
        [](double t) { return -1.0 / t; },
        [](double t) { return 1.0 / (t * t); },
        [](double t) { return -2.0 / (t * t * t); },
        detail::kPositiveDomain,
        flags,
        [](double lo, double hi) { return std::log(lo) - std::log(hi); },
        [](const Interval& iv) { return 2.0 / (iv.a * iv.a * iv.a); },
        "negrecip"};
}

inline Integrand builtin_neglog() {
    ConvexityFlags flags{TriState::asserted, TriState::denied, TriState::asserted};
    return Integrand{
        [](double t) { return -std::log(t); },
        [](double t) { return -1.0 / t; },
        [](double t) { return 1.0 / (t * t); },
        detail::kPositiveDomain,
        flags,
        [](double lo, double hi) {
            return -(hi * std::log(hi) - hi) + (lo * std::log(lo) - lo);
        },
        [](const Interval& iv) { return 1.0 / (iv.a * iv.a); },
        "neglog"};
}

inline Integrand builtin_exp() {
    ConvexityFlags flags{TriState::asserted, TriState::asserted, TriState::asserted};
    return Integrand{
        [](double t) { return std::exp(t); },
        [](double t) { return std::exp(t); },
        [](double t) { return std::exp(t); },
        detail::kRealDomain,
        flags,
        [](double lo, double hi) { return std::exp(hi) - std::exp(lo); },
        [](const Interval& iv) { return std::exp(iv.b); },
        "exp"};
}

inline Integrand builtin_poly(const std::vector<double>& coeffs) {
    if (coeffs.empty())
        throw std::domain_error("builtin_poly: need at least one coefficient");
    const auto d1 = detail::poly_derive(coeffs);
    const auto d2 = detail::poly_derive(d1);
    const auto anti = detail::poly_antiderive(coeffs);
    const std::size_t deg = coeffs.size() - 1;

    ConvexityFlags flags;
    if (deg <= 1) {
        flags = {TriState::asserted, TriState::asserted, TriState::asserted};
    } else if (deg == 2) {
        flags.f_convex = coeffs[2] >= 0.0 ? TriState::asserted : TriState::denied;
        flags.fprime_convex = TriState::asserted;
        flags.abs_f2_convex = TriState::asserted;
    } else if (deg == 3) {
        flags.f_convex = TriState::unknown;
        flags.fprime_convex = coeffs[3] >= 0.0 ? TriState::asserted : TriState::denied;
        flags.abs_f2_convex = TriState::asserted; // |affine| is convex
    }

    std::ostringstream name;
    name << "poly:";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        name << (i ? "," : "") << coeffs[i];

    Integrand fn{
        [coeffs](double t) { return detail::poly_eval(coeffs, t); },
        [d1](double t) { return detail::poly_eval(d1, t); },
        [d2](double t) { return detail::poly_eval(d2, t); },
        detail::kRealDomain,
        flags,
        [anti](double lo, double hi) {
            return detail::poly_eval(anti, hi) - detail::poly_eval(anti, lo);
        },
        nullptr,
        name.str()};
    if (deg <= 3) {
        // |f''| is the abs of an affine function: endpoint max is exact
        fn.d2_abs_max = [d2](const Interval& iv) {
            return std::max(std::abs(detail::poly_eval(d2, iv.a)),
                            std::abs(detail::poly_eval(d2, iv.b)));
        };
    }
    return fn;
}

/// (t - c)^4: the symmetric quartic used for derivative-matched endpoints.
inline Integrand builtin_quartic(double c) {
    ConvexityFlags flags{TriState::asserted, TriState::unknown, TriState::asserted};
    return Integrand{
        [c](double t) { const double u = t - c; return u * u * u * u; },
        [c](double t) { const double u = t - c; return 4.0 * u * u * u; },
        [c](double t) { const double u = t - c; return 12.0 * u * u; },
        detail::kRealDomain,
        flags,
        [c](double lo, double hi) {
            const double u = hi - c, v = lo - c;
            return (u * u * u * u * u - v * v * v * v * v) / 5.0;
        },
        [c](const Interval& iv) {
            const double u = iv.a - c, v = iv.b - c;
            return 12.0 * std::max(u * u, v * v);
        },
        "quartic(" + std::to_string(c) + ")"};
}

/// Parse a builtin spec string: "exp", "recip", "negrecip", "neglog",
/// "power:P", "poly:c0,c1,...", "quartic:C".
inline Integrand make_builtin(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "exp")
        return builtin_exp();
    if (name == "recip")
        return builtin_recip();
    if (name == "negrecip")
        return builtin_negrecip();
    if (name == "neglog")
        return builtin_neglog();
    if (name == "power") {
        if (args.empty())
            throw std::domain_error("power builtin needs an exponent, e.g. power:3");
        return builtin_power(std::stod(args));
    }
    if (name == "quartic") {
        if (args.empty())
            throw std::domain_error("quartic builtin needs a center, e.g. quartic:0.5");
        return builtin_quartic(std::stod(args));
    }
    if (name == "poly") {
        std::vector<double> coeffs;
        std::istringstream is(args);
        std::string tok;
        while (std::getline(is, tok, ','))
            coeffs.push_back(std::stod(tok));
        return builtin_poly(coeffs);
    }
    throw std::domain_error("unknown builtin: " + spec);
}

} // namespace corrq
