#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <corrq/integrand.hpp>
#include <corrq/kernel.hpp>
#include <corrq/random.hpp>

namespace corrq {

struct OracleConfig {
    double rel_tol = 1e-10;
    std::size_t panel_budget = 100000;
};

struct OracleResult {
    double value;
    double error_estimate;
    std::size_t evaluations;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (exact through degree 22,
// embedded Gauss estimate through degree 13).
struct Gk15 {
    static constexpr double xgk[8] = {
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144838258730,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000};
    static constexpr double wgk[8] = {
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714};
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327};
};

struct GkPanel {
    double a, b;
    double estimate;
    double error;
};

template <class F>
GkPanel gk15_panel(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = Gk15::wgk[7] * fc;
    double resg = Gk15::wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * Gk15::xgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        resk += Gk15::wgk[j] * fsum;
        if (j % 2 == 1)
            resg += Gk15::wg[(j - 1) / 2] * fsum;
    }
    return {a, b, resk * h, std::abs((resk - resg) * h)};
}

} // namespace detail

/// Adaptive reference integration: G7/K15 per panel, worst-panel halving,
/// initial panels split at the declared breakpoints so integrand jumps sit
/// on panel boundaries.
template <class F>
OracleResult integrate_reference(F&& f, const Interval& iv, const OracleConfig& cfg = {},
                                 const std::vector<double>& breakpoints = {}) {
    if (cfg.rel_tol < 1e-13)
        throw std::domain_error("integrate_reference: rel_tol below 1e-13");
    std::vector<double> cuts{iv.a, iv.b};
    for (double bp : breakpoints) {
        if (!iv.contains(bp))
            throw std::domain_error("integrate_reference: breakpoint outside interval");
        cuts.push_back(bp);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // ordered worst-first, leftmost breaking ties
    const auto worse = [](const detail::GkPanel& l, const detail::GkPanel& r) {
        if (l.error != r.error)
            return l.error > r.error;
        return l.a < r.a;
    };
    std::multiset<detail::GkPanel, decltype(worse)> panels(worse);

    std::size_t evals = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        panels.insert(detail::gk15_panel(f, cuts[i], cuts[i + 1]));
        evals += 15;
    }

    const auto totals = [&panels] {
        double v = 0.0, e = 0.0;
        for (const auto& p : panels) {
            v += p.estimate;
            e += p.error;
        }
        return std::pair{v, e};
    };

    // refine with a safety margin below the requested tolerance
    for (;;) {
        auto [value, err] = totals();
        if (err <= 0.1 * cfg.rel_tol * (1.0 + std::abs(value)))
            return {value, err, evals};
        if (panels.size() + 1 > cfg.panel_budget)
            throw std::runtime_error("integrate_reference: panel budget exceeded");
        auto worst = panels.begin();
        const double a = worst->a, b = worst->b;
        panels.erase(worst);
        const double mid = 0.5 * (a + b);
        if (!(a < mid && mid < b))
            throw std::runtime_error("integrate_reference: panel width underflow");
        panels.insert(detail::gk15_panel(f, a, mid));
        panels.insert(detail::gk15_panel(f, mid, b));
        evals += 30;
    }
}

struct DerivativeFailure {
    double t;
    std::string which; // "df" or "d2f"
    double rel_err;
};

struct DerivativeReport {
    bool ok;
    std::vector<DerivativeFailure> failures;
};

/// One-time central-difference consistency check of the supplied df/d2f.
inline DerivativeReport check_derivatives(const Integrand& fn, const Interval& iv,
                                          std::size_t n_points = 11) {
    if (n_points < 3)
        throw std::domain_error("check_derivatives: n_points >= 3");
    DerivativeReport rep{true, {}};
    for (std::size_t i = 0; i < n_points; ++i) {
        const double t = iv.a + (static_cast<double>(i) + 0.5) / static_cast<double>(n_points) * iv.width();
        const double scale1 = 1.0 + std::abs(fn.f(t)) + std::abs(fn.df(t));
        const double h1 = (1.0 + std::abs(t)) * 1e-6;
        const double fd1 = (fn.f(t + h1) - fn.f(t - h1)) / (2.0 * h1);
        const double e1 = std::abs(fd1 - fn.df(t)) / scale1;
        if (!(e1 <= 1e-7)) {
            rep.ok = false;
            rep.failures.push_back({t, "df", e1});
        }
        const double scale2 = 1.0 + std::abs(fn.f(t)) + std::abs(fn.d2f(t));
        const double h2 = (1.0 + std::abs(t)) * 1e-4;
        const double fd2 = (fn.f(t + h2) - 2.0 * fn.f(t) + fn.f(t - h2)) / (h2 * h2);
        const double e2 = std::abs(fd2 - fn.d2f(t)) / scale2;
        if (!(e2 <= 1e-5)) {
            rep.ok = false;
            rep.failures.push_back({t, "d2f", e2});
        }
    }
    return rep;
}

enum class ConvexityProbe { consistent, violated, inconclusive };

/// Advisory midpoint-convexity sampling; audit hypotheses always come from
/// declared flags, not from this probe.
template <class G>
ConvexityProbe probe_convexity(G&& g, const Interval& iv, std::size_t n_triples = 200,
                               std::uint64_t seed = 0) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n_triples; ++i) {
        double x1 = uniform(rng, iv.a, iv.b);
        double x2 = uniform(rng, iv.a, iv.b);
        if (x1 > x2)
            std::swap(x1, x2);
        const double g1 = g(x1), g2 = g(x2), gm = g(0.5 * (x1 + x2));
        if (!std::isfinite(g1) || !std::isfinite(g2) || !std::isfinite(gm))
            return ConvexityProbe::inconclusive;
        const double tol = 1e-9 * (1.0 + std::abs(g1) + std::abs(g2));
        if (gm > 0.5 * (g1 + g2) + tol)
            return ConvexityProbe::violated;
    }
    return ConvexityProbe::consistent;
}

} // namespace corrq
