#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include <corrq/identity.hpp>
#include <corrq/integrand.hpp>
#include <corrq/kernel.hpp>

namespace corrq {

enum class CertificateKind { sup_f2, l1_f2 };
enum class InputSource { user_asserted, convexity_derived };

/// A provable upper bound on |Int f - Q|:
///   sup_f2: (1/2) * ||k||_1 * M2   with M2 >= sup |f''|
///   l1_f2:  (1/2) * ||k||_sup * V  with V  >= Int |f''|
struct Certificate {
    CertificateKind kind;
    double input_value; // M2 or V
    double bound;
    InputSource input_source;
};

/// Quadrature value Q obtained by isolating Int f in the identity;
/// Int f - Q = (1/2) Int k f'' up to roundoff.
inline double corrected_rule(const Integrand& fn, const Interval& iv, const RuleParams& p) {
    validate_params(iv, p);
    const double a = iv.a, b = iv.b;
    const double x = p.x, mirror = a + b - x;
    const double d = p.beta - p.alpha;
    return 0.5 * (d * (fn.f(x) + fn.f(mirror)) -
                  (b - p.beta) * (b - p.beta) * fn.df(b) +
                  (a - p.alpha) * (a - p.alpha) * fn.df(a) -
                  2.0 * (a - p.alpha) * fn.f(a) + 2.0 * (b - p.beta) * fn.f(b) -
                  d * ((x - (3.0 * p.alpha + p.beta) / 4.0) * fn.df(x) +
                       (mirror - (p.alpha + 3.0 * p.beta) / 4.0) * fn.df(mirror)));
}

inline Certificate certify(const Integrand& fn, const Interval& iv, const RuleParams& p,
                           CertificateKind kind, std::optional<double> supplied = {}) {
    const KernelNorms norms = kernel_norms(iv, p);
    if (kind == CertificateKind::sup_f2) {
        double m2;
        if (supplied) {
            m2 = *supplied;
        } else if (fn.d2_abs_max) {
            m2 = fn.d2_abs_max(iv);
        } else {
            throw std::invalid_argument(
                "certify(sup_f2): supply M2 or use an integrand with a d2_abs_max evaluator");
        }
        return {kind, m2, 0.5 * norms.l1 * m2, InputSource::user_asserted};
    }
    double v;
    InputSource src;
    if (supplied) {
        v = *supplied;
        src = InputSource::user_asserted;
    } else if (fn.flags.f_convex == TriState::asserted) {
        // f'' >= 0, so Int |f''| = f'(b) - f'(a)
        v = fn.df(iv.b) - fn.df(iv.a);
        src = InputSource::convexity_derived;
    } else {
        throw std::invalid_argument(
            "certify(l1_f2): supply V or assert convexity of f");
    }
    return {kind, v, 0.5 * norms.sup * v, src};
}

/// Maps a panel to the rule parameters used on it.
using ParamsPolicy = std::function<RuleParams(const Interval&)>;

/// alpha = panel left, beta = panel right, x = panel midpoint. Zeroes the
/// derivative correction terms; averaged midpoint flavor.
inline RuleParams midpoint_policy(const Interval& panel) {
    return {panel.midpoint(), panel.a, panel.b};
}

/// alpha = beta = panel midpoint: the corrected trapezoid rule.
inline RuleParams corollary2_policy(const Interval& panel) {
    const double m = panel.midpoint();
    return {m, m, m};
}

struct PanelRecord {
    Interval panel;
    double estimate;
    double bound;
};

struct QuadratureResult {
    double estimate;
    double certified_error;
    std::size_t panels;
    std::vector<PanelRecord> panel_records;
};

namespace detail {

inline PanelRecord eval_panel(const Integrand& fn, const Interval& panel,
                              const ParamsPolicy& policy, CertificateKind kind,
                              const std::optional<double>& supplied) {
    const RuleParams p = policy(panel);
    const double q = corrected_rule(fn, panel, p);
    const Certificate cert = certify(fn, panel, p, kind, supplied);
    return {panel, q, cert.bound};
}

// Aggregation in left-to-right panel order, so results do not depend on
// the order panels were produced in.
inline QuadratureResult collect(std::vector<PanelRecord> records) {
    std::sort(records.begin(), records.end(),
              [](const PanelRecord& l, const PanelRecord& r) { return l.panel.a < r.panel.a; });
    double est = 0.0, err = 0.0;
    for (const auto& rec : records) {
        est += rec.estimate;
        err += rec.bound;
    }
    return {est, err, records.size(), std::move(records)};
}

} // namespace detail

/// n equal-width panels, per-panel corrected rule plus certificate.
/// A supplied M2/V must be valid on the whole interval; it is reused on
/// every panel.
inline QuadratureResult integrate_composite(const Integrand& fn, const Interval& iv,
                                            std::size_t n,
                                            const ParamsPolicy& policy = midpoint_policy,
                                            CertificateKind kind = CertificateKind::sup_f2,
                                            std::optional<double> supplied = {}) {
    if (n < 1)
        throw std::domain_error("integrate_composite: n >= 1");
    std::vector<PanelRecord> records;
    records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = iv.a + iv.width() * static_cast<double>(i) / static_cast<double>(n);
        const double hi = iv.a + iv.width() * static_cast<double>(i + 1) / static_cast<double>(n);
        records.push_back(detail::eval_panel(fn, Interval{lo, hi}, policy, kind, supplied));
    }
    return detail::collect(std::move(records));
}

struct NonConvergenceError : std::runtime_error {
    QuadratureResult partial;
    explicit NonConvergenceError(QuadratureResult r)
        : std::runtime_error("integrate_adaptive: certified error above tolerance at max_panels"),
          partial(std::move(r)) {}
};

/// Bisects the panel with the largest certified bound (leftmost on ties)
/// until the summed bound meets tol or max_panels is reached.
inline QuadratureResult integrate_adaptive(const Integrand& fn, const Interval& iv, double tol,
                                           const ParamsPolicy& policy = midpoint_policy,
                                           CertificateKind kind = CertificateKind::sup_f2,
                                           std::size_t max_panels = std::size_t{1} << 16,
                                           std::optional<double> supplied = {}) {
    if (!(tol > 0.0))
        throw std::domain_error("integrate_adaptive: tol > 0 required");

    const auto worse = [](const PanelRecord& l, const PanelRecord& r) {
        if (l.bound != r.bound)
            return l.bound > r.bound;
        return l.panel.a < r.panel.a;
    };
    std::multiset<PanelRecord, decltype(worse)> panels(worse);
    panels.insert(detail::eval_panel(fn, iv, policy, kind, supplied));

    const auto total_bound = [&panels] {
        double s = 0.0;
        for (const auto& rec : panels)
            s += rec.bound;
        return s;
    };

    while (total_bound() > tol && panels.size() < max_panels) {
        auto worst = panels.begin();
        const Interval panel = worst->panel;
        panels.erase(worst);
        const double mid = panel.midpoint();
        panels.insert(detail::eval_panel(fn, Interval{panel.a, mid}, policy, kind, supplied));
        panels.insert(detail::eval_panel(fn, Interval{mid, panel.b}, policy, kind, supplied));
    }

    QuadratureResult result =
        detail::collect(std::vector<PanelRecord>(panels.begin(), panels.end()));
    if (result.certified_error > tol)
        throw NonConvergenceError(std::move(result));
    return result;
}

} // namespace corrq
