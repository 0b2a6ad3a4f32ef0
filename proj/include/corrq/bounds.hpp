#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <corrq/identity.hpp>
#include <corrq/integrand.hpp>
#include <corrq/kernel.hpp>

namespace corrq {

enum class NormChoice { sup, l1, half_range, none };

inline const char* to_string(NormChoice n) {
    switch (n) {
    case NormChoice::sup: return "sup";
    case NormChoice::l1: return "l1";
    case NormChoice::half_range: return "half_range";
    default: return "n/a";
    }
}

/// One evaluated inequality claim. A claim is "violated" only when the
/// signed slack rhs - lhs is negative beyond roundoff; hypothesis failures
/// are recorded as flags, never enforced, since the source material itself
/// applies its bounds outside their stated hypotheses.
struct BoundAudit {
    std::string claim_id;
    double lhs;
    double rhs;
    bool satisfied;
    double slack;
    NormChoice norm_choice;
    struct Inputs {
        double a = std::numeric_limits<double>::quiet_NaN();
        double b = std::numeric_limits<double>::quiet_NaN();
        double x = std::numeric_limits<double>::quiet_NaN();
        double alpha = std::numeric_limits<double>::quiet_NaN();
        double beta = std::numeric_limits<double>::quiet_NaN();
        std::string integrand;
        std::string variant;
        std::vector<std::string> hypothesis_flags;
    } inputs;
};

inline double audit_tolerance(double rhs) { return 1e-10 * (1.0 + std::abs(rhs)); }

namespace detail {

inline BoundAudit make_audit(std::string claim_id, double lhs, double rhs, NormChoice norm,
                             BoundAudit::Inputs inputs) {
    const double slack = rhs - lhs;
    return {std::move(claim_id), lhs, rhs, slack >= -audit_tolerance(rhs), slack, norm,
            std::move(inputs)};
}

inline BoundAudit::Inputs base_inputs(const Integrand& fn, const Interval& iv) {
    BoundAudit::Inputs in;
    in.a = iv.a;
    in.b = iv.b;
    in.integrand = fn.label;
    return in;
}

} // namespace detail

/// Bracket of the first theorem: f'(a) + f'(b) - 2 f'((a+b)/2).
inline double bracket_b1(const Integrand& fn, const Interval& iv) {
    return fn.df(iv.a) + fn.df(iv.b) - 2.0 * fn.df(iv.midpoint());
}

/// Bracket of the second theorem: |f''(a)| + |f''(b)| + |f''((a+b)/2)|.
inline double bracket_b2(const Integrand& fn, const Interval& iv) {
    return std::abs(fn.d2f(iv.a)) + std::abs(fn.d2f(iv.b)) + std::abs(fn.d2f(iv.midpoint()));
}

inline double chosen_norm(const KernelNorms& norms, NormChoice choice) {
    switch (choice) {
    case NormChoice::sup: return norms.sup;
    case NormChoice::l1: return norms.l1;
    case NormChoice::half_range: return norms.half_range;
    default: throw std::invalid_argument("norm choice required for this claim");
    }
}

/// T1: |identity LHS| <= norm * B1, for f' convex.
inline BoundAudit claim_theorem1(const Integrand& fn, const Interval& iv, const RuleParams& p,
                                 NormChoice norm = NormChoice::sup,
                                 const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    in.x = p.x;
    in.alpha = p.alpha;
    in.beta = p.beta;
    if (fn.flags.fprime_convex != TriState::asserted)
        in.hypothesis_flags.push_back("fprime_convex_not_asserted");
    const double lhs = std::abs(identity_lhs(fn, iv, p, cfg));
    const double rhs = chosen_norm(kernel_norms(iv, p), norm) * bracket_b1(fn, iv);
    return detail::make_audit("T1", lhs, rhs, norm, std::move(in));
}

enum class BracketVariant { literal, corrected };

inline const char* to_string(BracketVariant v) {
    return v == BracketVariant::literal ? "literal" : "corrected";
}

/// T2: |identity LHS| <= ((b-a)/4) * norm * bracket, for |f''| convex.
/// The corrected bracket carries the extra midpoint term that the
/// half-interval Hermite-Hadamard step actually produces.
inline BoundAudit claim_theorem2(const Integrand& fn, const Interval& iv, const RuleParams& p,
                                 NormChoice norm = NormChoice::sup,
                                 BracketVariant variant = BracketVariant::literal,
                                 const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    in.x = p.x;
    in.alpha = p.alpha;
    in.beta = p.beta;
    in.variant = to_string(variant);
    if (fn.flags.abs_f2_convex != TriState::asserted)
        in.hypothesis_flags.push_back("abs_f2_convex_not_asserted");
    const double lhs = std::abs(identity_lhs(fn, iv, p, cfg));
    double bracket = bracket_b2(fn, iv);
    if (variant == BracketVariant::corrected)
        bracket += std::abs(fn.d2f(iv.midpoint()));
    const double rhs = 0.25 * iv.width() * chosen_norm(kernel_norms(iv, p), norm) * bracket;
    return detail::make_audit("T2", lhs, rhs, norm, std::move(in));
}

/// P6: the alpha=a, beta=b specialization with its printed constant
/// (1/3)[(x-a)^3 + ((a+b)/2-x)^3].
inline BoundAudit claim_prop1(const Integrand& fn, const Interval& iv, double x,
                              const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    in.x = x;
    if (fn.flags.fprime_convex != TriState::asserted)
        in.hypothesis_flags.push_back("fprime_convex_not_asserted");
    const double a = iv.a, b = iv.b, mirror = a + b - x;
    const double intf = integral_of(fn, iv, cfg);
    const double lhs = std::abs(intf - 0.5 * (b - a) * (fn.f(x) + fn.f(mirror)) +
                                0.5 * (b - a) * (x - (3.0 * a + b) / 4.0) *
                                    (fn.df(x) - fn.df(mirror)));
    const double u = x - a, v = iv.midpoint() - x;
    const double rhs = (u * u * u + v * v * v) / 3.0 * bracket_b1(fn, iv);
    return detail::make_audit("P6", lhs, rhs, NormChoice::none, std::move(in));
}

/// H1: the printed "midpoint inequality".
inline BoundAudit claim_midpoint_h1(const Integrand& fn, const Interval& iv,
                                    const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    if (fn.flags.fprime_convex != TriState::asserted)
        in.hypothesis_flags.push_back("fprime_convex_not_asserted");
    const double w = iv.width();
    const double lhs = std::abs(integral_of(fn, iv, cfg) / w - fn.f(iv.midpoint()));
    const double rhs = w * w / 24.0 * bracket_b1(fn, iv);
    return detail::make_audit("H1", lhs, rhs, NormChoice::none, std::move(in));
}

/// P7: the corrected-trapezoid specialization with constant (b-a)^2/48.
inline BoundAudit claim_prop2(const Integrand& fn, const Interval& iv,
                              const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    if (fn.flags.fprime_convex != TriState::asserted)
        in.hypothesis_flags.push_back("fprime_convex_not_asserted");
    const double w = iv.width();
    const double lhs = std::abs(integral_of(fn, iv, cfg) / w - 0.5 * (fn.f(iv.a) + fn.f(iv.b)) +
                                w / 8.0 * (fn.df(iv.b) - fn.df(iv.a)));
    const double rhs = w * w / 48.0 * bracket_b1(fn, iv);
    return detail::make_audit("P7", lhs, rhs, NormChoice::none, std::move(in));
}

/// H2: the printed "trapezoid inequality"; requires f'(a) = f'(b), which is
/// recorded but not enforced.
inline BoundAudit claim_trapezoid_h2(const Integrand& fn, const Interval& iv,
                                     const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    if (fn.flags.fprime_convex != TriState::asserted)
        in.hypothesis_flags.push_back("fprime_convex_not_asserted");
    const double dfa = fn.df(iv.a), dfb = fn.df(iv.b);
    if (std::abs(dfa - dfb) > 1e-9 * (1.0 + std::abs(dfa) + std::abs(dfb)))
        in.hypothesis_flags.push_back("fprime_endpoints_differ");
    const double w = iv.width();
    const double lhs = std::abs(integral_of(fn, iv, cfg) / w - 0.5 * (fn.f(iv.a) + fn.f(iv.b)));
    const double rhs = w * w / 24.0 * (dfb - fn.df(iv.midpoint()));
    return detail::make_audit("H2", lhs, rhs, NormChoice::none, std::move(in));
}

/// P11: corrected trapezoid with the second-derivative bracket, constant
/// (b-a)^3/192.
inline BoundAudit claim_prop3(const Integrand& fn, const Interval& iv,
                              const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    if (fn.flags.abs_f2_convex != TriState::asserted)
        in.hypothesis_flags.push_back("abs_f2_convex_not_asserted");
    const double w = iv.width();
    const double lhs = std::abs(integral_of(fn, iv, cfg) / w - 0.5 * (fn.f(iv.a) + fn.f(iv.b)) +
                                w / 8.0 * (fn.df(iv.b) - fn.df(iv.a)));
    const double rhs = w * w * w / 192.0 * bracket_b2(fn, iv);
    return detail::make_audit("P11", lhs, rhs, NormChoice::none, std::move(in));
}

/// R12: plain trapezoid error against the (b-a)^3/192 bracket; both of its
/// stated hypotheses are recorded as flags.
inline BoundAudit claim_remark12(const Integrand& fn, const Interval& iv,
                                 const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    if (fn.flags.abs_f2_convex != TriState::asserted)
        in.hypothesis_flags.push_back("abs_f2_convex_not_asserted");
    const double dfa = fn.df(iv.a), dfb = fn.df(iv.b);
    if (std::abs(dfa - dfb) > 1e-9 * (1.0 + std::abs(dfa) + std::abs(dfb)))
        in.hypothesis_flags.push_back("fprime_endpoints_differ");
    const double s = std::abs(fn.d2f(iv.a)) + std::abs(fn.d2f(iv.b));
    const double m = std::abs(fn.d2f(iv.midpoint()));
    if (std::abs(s - m) > 1e-9 * (1.0 + s + m))
        in.hypothesis_flags.push_back("f2_bracket_condition_fails");
    const double w = iv.width();
    const double lhs = std::abs(integral_of(fn, iv, cfg) / w - 0.5 * (fn.f(iv.a) + fn.f(iv.b)));
    const double rhs = w * w * w / 192.0 * bracket_b2(fn, iv);
    return detail::make_audit("R12", lhs, rhs, NormChoice::none, std::move(in));
}

/// HH: the classical double inequality, run as a positive control. slack is
/// the worst of the two sides; satisfied iff both hold.
inline BoundAudit claim_hermite_hadamard(const Integrand& fn, const Interval& iv,
                                         const OracleConfig& cfg = {}) {
    auto in = detail::base_inputs(fn, iv);
    if (fn.flags.f_convex != TriState::asserted)
        in.hypothesis_flags.push_back("f_convex_not_asserted");
    const double mean = integral_of(fn, iv, cfg) / iv.width();
    const double lower = fn.f(iv.midpoint());
    const double upper = 0.5 * (fn.f(iv.a) + fn.f(iv.b));
    // worst one-sided violation, expressed as lhs <= rhs with rhs = 0
    const double lhs = std::max(lower - mean, mean - upper);
    BoundAudit audit = detail::make_audit("HH", lhs, 0.0, NormChoice::none, std::move(in));
    const double scale = 1.0 + std::abs(mean) + std::abs(lower) + std::abs(upper);
    audit.satisfied = audit.slack >= -1e-10 * scale;
    return audit;
}

} // namespace corrq
