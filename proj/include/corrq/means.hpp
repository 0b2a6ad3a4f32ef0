#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include <corrq/bounds.hpp>

namespace corrq {

/// The six special means of two positive numbers. Lp uses the scale-free
/// form a * [(r^{p+1}-1)/((p+1)(r-1))]^{1/p} with r = b/a, and narrow
/// windows around the removable singularities p = 0 (identric) and
/// p = -1 (logarithmic) where the direct formula loses all precision.
struct MeanSet {
    double a;
    double b;
    double A;
    double G;
    double H;
    double L;
    double I;

    double lp(double p) const {
        if (a == b)
            return a;
        if (std::abs(p) < 1e-6)
            return I;
        if (std::abs(p + 1.0) < 1e-6)
            return L;
        const double r = b / a;
        const double u = (p + 1.0) * std::log(r);
        const double ratio = std::expm1(u) / ((p + 1.0) * (r - 1.0));
        return a * std::pow(ratio, 1.0 / p);
    }
};

inline MeanSet means_compute(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("means_compute: require finite a, b > 0");
    if (a > b)
        std::swap(a, b);
    MeanSet m{a, b, 0, 0, 0, 0, 0};
    m.A = 0.5 * (a + b);
    m.G = std::sqrt(a) * std::sqrt(b);
    m.H = 2.0 * a * b / (a + b);
    if (a == b) {
        m.L = a;
        m.I = a;
    } else {
        const double dlog = std::log(b) - std::log(a);
        m.L = (b - a) / dlog;
        m.I = std::exp((b * std::log(b) - a * std::log(a)) / (b - a) - 1.0);
    }
    return m;
}

/// Chain H <= G <= L <= I <= A, checked within 1e-12 relative slack.
inline BoundAudit chain_check(double a, double b) {
    const MeanSet m = means_compute(a, b);
    const double chain[5] = {m.H, m.G, m.L, m.I, m.A};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        worst = std::max(worst, chain[i] - chain[i + 1]);
    BoundAudit::Inputs in;
    in.a = m.a;
    in.b = m.b;
    in.integrand = "means";
    BoundAudit audit = detail::make_audit("CHAIN", worst, 0.0, NormChoice::none, std::move(in));
    audit.satisfied = worst <= 1e-12 * (1.0 + m.A);
    audit.slack = -worst;
    return audit;
}

enum class MeansVariant { literal, corrected };

inline const char* to_string(MeansVariant v) {
    return v == MeansVariant::literal ? "literal" : "corrected";
}

namespace detail {

// L_p^p without going through the p-th root
inline double lp_pow_p(double a, double b, double p) {
    if (a == b)
        return std::pow(a, p);
    return (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / ((p + 1.0) * (b - a));
}

inline double harmonic_inv(double u, double v) { return (1.0 / u + 1.0 / v) * 0.5; }

} // namespace detail

/// The five printed means inequalities. M3 and M4 carry both the literal
/// printed form and the corrected form that instantiating the quadrature
/// propositions actually produces; neither is asserted correct.
inline BoundAudit claim_means(const std::string& claim, double a, double b,
                              std::optional<double> p = {},
                              MeansVariant variant = MeansVariant::literal) {
    if (!(0.0 < a && a < b))
        throw std::domain_error("claim_means: require 0 < a < b");
    const MeanSet m = means_compute(a, b);
    const double w = b - a;

    BoundAudit::Inputs in;
    in.a = a;
    in.b = b;
    in.integrand = "means";

    if (claim == "M1" || claim == "M3") {
        if (!p || !(*p > 1.0))
            throw std::domain_error(claim + ": requires p > 1");
        const double pp = *p;
        const double lppow = detail::lp_pow_p(a, b, pp);
        const double bracket =
            0.5 * (std::pow(a, pp - 1.0) + std::pow(b, pp - 1.0)) - std::pow(m.A, pp - 1.0);
        if (claim == "M1") {
            const double lhs = std::abs(lppow - std::pow(m.A, pp));
            const double rhs = pp * w * w / 12.0 * bracket;
            return detail::make_audit("M1", lhs, rhs, NormChoice::none, std::move(in));
        }
        in.variant = to_string(variant);
        const double trap = variant == MeansVariant::literal
                                ? std::pow(m.A, pp)
                                : 0.5 * (std::pow(a, pp) + std::pow(b, pp));
        const double corr = pp * (pp - 1.0) * w * w / 8.0 * detail::lp_pow_p(a, b, pp - 2.0);
        const double lhs = std::abs(lppow - trap + corr);
        const double rhs = pp * w * w / 24.0 * bracket;
        return detail::make_audit("M3", lhs, rhs, NormChoice::none, std::move(in));
    }
    if (claim == "M2") {
        const double lhs = std::abs(1.0 / m.A - 1.0 / m.L);
        const double rhs = w * w / 12.0 * (detail::harmonic_inv(a * a, b * b) - 1.0 / (m.A * m.A));
        return detail::make_audit("M2", lhs, rhs, NormChoice::none, std::move(in));
    }
    if (claim == "M4") {
        in.variant = to_string(variant);
        const double corr = w * w / (8.0 * a * b); // (b-a)^2/8 * G^{-2}
        const double lhs = variant == MeansVariant::literal
                               ? std::abs(std::log(m.I) + std::log(m.G) + corr)
                               : std::abs(std::log(m.G) - std::log(m.I) + corr);
        const double rhs = w * w * w / 96.0 *
                           (detail::harmonic_inv(a * a, b * b) + 0.5 / (m.A * m.A));
        return detail::make_audit("M4", lhs, rhs, NormChoice::none, std::move(in));
    }
    if (claim == "M5") {
        const double lhs = std::abs(1.0 / m.L - 1.0 / m.H);
        const double rhs = w * w * w / 48.0 *
                           (detail::harmonic_inv(a * a * a, b * b * b) +
                            0.5 / (m.A * m.A * m.A));
        return detail::make_audit("M5", lhs, rhs, NormChoice::none, std::move(in));
    }
    throw std::domain_error("unknown means claim: " + claim);
}

} // namespace corrq
