#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <corrq/bounds.hpp>
#include <corrq/builtins.hpp>
#include <corrq/means.hpp>
#include <corrq/random.hpp>

namespace corrq {

/// Integrand family + base interval for batch audits. The family name is
/// either a predefined group ("linear", "cubic", "convex-all", ...) or any
/// builtin spec accepted by make_builtin.
struct FamilySpec {
    std::string family;
    Interval interval;
    double p = 3.0; // exponent used by power-based claims (M1/M3)
};

inline std::vector<Integrand> family_integrands(const FamilySpec& spec) {
    const std::string& name = spec.family;
    const bool positive = spec.interval.a > 0.0;
    if (name == "linear")
        return {builtin_poly({0.0, 1.0})};
    if (name == "quadratic")
        return {builtin_poly({0.0, 0.0, 1.0})};
    if (name == "cubic")
        return {builtin_poly({0.0, 0.0, 0.0, 1.0})};
    if (name == "convex-all" || name == "builtin-convex") {
        std::vector<Integrand> fns{builtin_poly({0.0, 0.0, 1.0}), builtin_exp(),
                                   builtin_quartic(spec.interval.midpoint())};
        if (positive) {
            fns.push_back(builtin_recip());
            fns.push_back(builtin_neglog());
            fns.push_back(builtin_power(spec.p));
        }
        return fns;
    }
    if (name == "builtin" || name == "all") {
        std::vector<Integrand> fns{builtin_poly({0.0, 0.0, 1.0}),
                                   builtin_poly({0.0, 0.0, 0.0, 1.0}), builtin_exp(),
                                   builtin_quartic(spec.interval.midpoint())};
        if (positive) {
            fns.push_back(builtin_recip());
            fns.push_back(builtin_negrecip());
            fns.push_back(builtin_neglog());
            fns.push_back(builtin_power(spec.p));
        }
        return fns;
    }
    return {make_builtin(name)};
}

struct ClaimSummary {
    int evaluated = 0;
    int satisfied = 0;
    int violated = 0;
    double max_violation = 0.0; // largest -slack among violated cases
    double max_slack = 0.0;     // largest positive slack
};

struct AuditReport {
    std::vector<BoundAudit> audits;
    std::map<std::string, ClaimSummary> summary;
    std::uint64_t seed = 0;
    std::string family;
};

namespace detail {

inline RuleParams draw_params(const Interval& iv, std::mt19937_64& rng) {
    const double x = uniform(rng, iv.a, iv.midpoint());
    const double alpha = uniform(rng, iv.a, iv.b);
    const double beta = uniform(rng, alpha, iv.b);
    return {x, alpha, beta};
}

inline bool is_means_claim(const std::string& id) {
    return id.size() == 2 && id[0] == 'M' && id[1] >= '1' && id[1] <= '5';
}

} // namespace detail

/// Deterministic batch audit: samples are pre-generated from the seed, then
/// each requested claim is evaluated on each sample in order. Variant claims
/// (T2, M3, M4) are reported in both variants.
inline AuditReport audit_run(const std::vector<std::string>& claim_ids, const FamilySpec& spec,
                             std::size_t n_samples, std::uint64_t seed,
                             const OracleConfig& cfg = {}) {
    if (n_samples < 1)
        throw std::domain_error("audit_run: n_samples >= 1");
    for (const auto& id : claim_ids) {
        static const std::vector<std::string> known{"T1", "T2", "P6",  "P7", "H1", "H2",
                                                    "P11", "R12", "HH", "M1", "M2", "M3",
                                                    "M4", "M5"};
        if (std::find(known.begin(), known.end(), id) == known.end())
            throw std::domain_error("audit_run: unknown claim id " + id);
    }

    std::vector<Integrand> fns;
    bool need_integrands = false;
    for (const auto& id : claim_ids)
        if (!detail::is_means_claim(id))
            need_integrands = true;
    if (need_integrands)
        fns = family_integrands(spec);

    // pre-generate all sample tuples so claim evaluation order cannot
    // perturb the stream
    struct Sample {
        std::size_t fn_index;
        RuleParams params;
        double ma, mb; // means endpoints
    };
    std::mt19937_64 rng(seed);
    std::vector<Sample> samples;
    samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        Sample s{};
        s.fn_index = fns.empty() ? 0 : static_cast<std::size_t>(rng() % fns.size());
        s.params = detail::draw_params(spec.interval, rng);
        double u = uniform(rng, spec.interval.a, spec.interval.b);
        double v = uniform(rng, spec.interval.a, spec.interval.b);
        if (u > v)
            std::swap(u, v);
        if (u == v)
            v = spec.interval.b; // degenerate draw; keep deterministic
        s.ma = u;
        s.mb = v;
        samples.push_back(s);
    }

    AuditReport report;
    report.seed = seed;
    report.family = spec.family;

    for (const auto& id : claim_ids) {
        for (const auto& s : samples) {
            std::vector<BoundAudit> rows;
            if (detail::is_means_claim(id)) {
                if (!(s.ma > 0.0))
                    throw std::domain_error("audit_run: means claims need a positive interval");
                const std::optional<double> p =
                    (id == "M1" || id == "M3") ? std::optional<double>(spec.p) : std::nullopt;
                if (id == "M3" || id == "M4") {
                    rows.push_back(claim_means(id, s.ma, s.mb, p, MeansVariant::literal));
                    rows.push_back(claim_means(id, s.ma, s.mb, p, MeansVariant::corrected));
                } else {
                    rows.push_back(claim_means(id, s.ma, s.mb, p));
                }
            } else {
                const Integrand& fn = fns[s.fn_index];
                if (id == "T1") {
                    rows.push_back(claim_theorem1(fn, spec.interval, s.params, NormChoice::sup, cfg));
                } else if (id == "T2") {
                    rows.push_back(claim_theorem2(fn, spec.interval, s.params, NormChoice::sup,
                                                  BracketVariant::literal, cfg));
                    rows.push_back(claim_theorem2(fn, spec.interval, s.params, NormChoice::sup,
                                                  BracketVariant::corrected, cfg));
                } else if (id == "P6") {
                    rows.push_back(claim_prop1(fn, spec.interval, s.params.x, cfg));
                } else if (id == "H1") {
                    rows.push_back(claim_midpoint_h1(fn, spec.interval, cfg));
                } else if (id == "P7") {
                    rows.push_back(claim_prop2(fn, spec.interval, cfg));
                } else if (id == "H2") {
                    rows.push_back(claim_trapezoid_h2(fn, spec.interval, cfg));
                } else if (id == "P11") {
                    rows.push_back(claim_prop3(fn, spec.interval, cfg));
                } else if (id == "R12") {
                    rows.push_back(claim_remark12(fn, spec.interval, cfg));
                } else if (id == "HH") {
                    rows.push_back(claim_hermite_hadamard(fn, spec.interval, cfg));
                }
            }
            for (auto& row : rows) {
                auto& sum = report.summary[row.claim_id];
                sum.evaluated += 1;
                if (row.satisfied) {
                    sum.satisfied += 1;
                    sum.max_slack = std::max(sum.max_slack, row.slack);
                } else {
                    sum.violated += 1;
                    sum.max_violation = std::max(sum.max_violation, -row.slack);
                }
                report.audits.push_back(std::move(row));
            }
        }
    }
    return report;
}

} // namespace corrq
