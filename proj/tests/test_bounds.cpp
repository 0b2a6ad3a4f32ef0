#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <corrq/audit.hpp>
#include <corrq/bounds.hpp>
#include <corrq/builtins.hpp>
#include <corrq/quadrature.hpp>

#include "test_helpers.hpp"

using namespace corrq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const Interval unit{0.0, 1.0};
const Interval iv12{1.0, 2.0};
const Integrand quad = builtin_poly({0.0, 0.0, 1.0});
const Integrand cubic = builtin_power(3.0);
const Integrand line = builtin_poly({0.5, 2.0});
} // namespace

TEST_CASE("theorem 1 claim") {
    // quadratics zero the bracket while the lhs stays positive
    const BoundAudit aq = claim_theorem1(quad, unit, {0.5, 0.0, 1.0});
    CHECK_THAT(aq.rhs, WithinAbs(0.0, 1e-13));
    CHECK_THAT(aq.lhs, WithinAbs(1.0 / 6.0, 1e-12));
    CHECK_FALSE(aq.satisfied);

    const BoundAudit ac = claim_theorem1(cubic, iv12, {1.5, 1.0, 2.0}, NormChoice::sup);
    CHECK_THAT(ac.lhs, WithinAbs(0.75, 1e-11));
    CHECK_THAT(ac.rhs, WithinAbs(0.375, 1e-12));
    CHECK_FALSE(ac.satisfied);

    const BoundAudit al = claim_theorem1(line, unit, {0.3, 0.1, 0.9});
    CHECK_THAT(al.lhs, WithinAbs(0.0, 1e-13));
    CHECK(al.satisfied);
}

TEST_CASE("theorem 2 claim and bracket variants") {
    const RuleParams trap{1.5, 1.5, 1.5};
    const BoundAudit literal =
        claim_theorem2(cubic, iv12, trap, NormChoice::sup, BracketVariant::literal);
    CHECK_THAT(literal.lhs, WithinAbs(0.75, 1e-11));
    CHECK_THAT(literal.rhs, WithinAbs(0.25 * 0.25 * 27.0, 1e-12));
    CHECK(literal.satisfied);

    const BoundAudit half =
        claim_theorem2(cubic, iv12, trap, NormChoice::half_range, BracketVariant::literal);
    CHECK_THAT(half.rhs, WithinAbs(0.25 * (1.0 / 24.0) * 27.0, 1e-12));
    CHECK_FALSE(half.satisfied);

    const BoundAudit corrected =
        claim_theorem2(cubic, iv12, trap, NormChoice::sup, BracketVariant::corrected);
    CHECK_THAT(corrected.rhs, WithinAbs(0.25 * 0.25 * 36.0, 1e-12));
    CHECK(corrected.inputs.variant == "corrected");

    CHECK(claim_theorem2(line, iv12, trap).satisfied);
}

TEST_CASE("proposition claims on the cubic refutation instance") {
    const BoundAudit p6 = claim_prop1(cubic, iv12, 1.5);
    CHECK_THAT(p6.lhs, WithinAbs(0.375, 1e-12));
    CHECK_THAT(p6.rhs, WithinAbs(0.0625, 1e-12));
    CHECK_FALSE(p6.satisfied);

    const BoundAudit h1 = claim_midpoint_h1(cubic, iv12);
    CHECK_THAT(h1.lhs, WithinAbs(0.375, 1e-12));
    CHECK_THAT(h1.rhs, WithinAbs(0.0625, 1e-12));
    CHECK_FALSE(h1.satisfied);

    const BoundAudit p7 = claim_prop2(cubic, iv12);
    CHECK_THAT(p7.lhs, WithinAbs(0.375, 1e-12));
    CHECK_THAT(p7.rhs, WithinAbs(0.03125, 1e-12));
    CHECK_FALSE(p7.satisfied);

    const BoundAudit p11 = claim_prop3(cubic, iv12);
    CHECK_THAT(p11.lhs, WithinAbs(0.375, 1e-12));
    CHECK_THAT(p11.rhs, WithinAbs(0.140625, 1e-12));
    CHECK_FALSE(p11.satisfied);

    const BoundAudit r12 = claim_remark12(cubic, iv12);
    CHECK_THAT(r12.lhs, WithinAbs(0.75, 1e-12)); // |3.75 - 4.5|
    CHECK_THAT(r12.rhs, WithinAbs(0.140625, 1e-12));
    CHECK_FALSE(r12.satisfied);
}

TEST_CASE("quadratic refutations") {
    const BoundAudit h1 = claim_midpoint_h1(quad, unit);
    CHECK_THAT(h1.lhs, WithinAbs(1.0 / 12.0, 1e-13));
    CHECK_THAT(h1.rhs, WithinAbs(0.0, 1e-13));
    CHECK_FALSE(h1.satisfied);

    const BoundAudit p7 = claim_prop2(quad, unit);
    CHECK_THAT(p7.lhs, WithinAbs(1.0 / 12.0, 1e-13));
    CHECK_FALSE(p7.satisfied);
}

TEST_CASE("h2 hypothesis recording") {
    const BoundAudit violated = claim_trapezoid_h2(quad, unit);
    CHECK_THAT(violated.lhs, WithinAbs(1.0 / 6.0, 1e-13));
    CHECK_THAT(violated.rhs, WithinAbs(1.0 / 24.0, 1e-13));
    CHECK_FALSE(violated.satisfied);
    // f'(0) = 0 != f'(1) = 2: hypothesis fails but the claim is still scored
    CHECK(std::find(violated.inputs.hypothesis_flags.begin(),
                    violated.inputs.hypothesis_flags.end(),
                    "fprime_endpoints_differ") != violated.inputs.hypothesis_flags.end());

    // even the symmetric quartic fails it: f'(0) = -1/2, f'(1) = 1/2
    const BoundAudit quartic = claim_trapezoid_h2(builtin_quartic(0.5), unit);
    CHECK(std::find(quartic.inputs.hypothesis_flags.begin(),
                    quartic.inputs.hypothesis_flags.end(),
                    "fprime_endpoints_differ") != quartic.inputs.hypothesis_flags.end());

    CHECK(claim_trapezoid_h2(line, unit).satisfied);
}

TEST_CASE("hermite-hadamard positive control") {
    const BoundAudit q = claim_hermite_hadamard(quad, unit);
    CHECK(q.satisfied);
    const BoundAudit l = claim_hermite_hadamard(line, unit);
    CHECK(l.satisfied);
    const BoundAudit r = claim_hermite_hadamard(builtin_recip(), iv12);
    CHECK(r.satisfied);
}

TEST_CASE("B1 vanishes for quadratics") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 50; ++i) {
        const Integrand q2 = builtin_poly({uniform(rng, -2, 2), uniform(rng, -2, 2),
                                           uniform(rng, -2, 2)});
        const double a = uniform(rng, -3.0, 3.0);
        const Interval iv{a, a + uniform(rng, 0.1, 2.0)};
        REQUIRE_THAT(bracket_b1(q2, iv), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("T1 lhs never exceeds the rigorous certificate") {
    std::mt19937_64 rng(13);
    for (const auto& [fn, iv] : testing::identity_suite()) {
        for (int draw = 0; draw < 10; ++draw) {
            const RuleParams p = testing::draw_valid_params(iv, rng);
            const BoundAudit t1 = claim_theorem1(fn, iv, p);
            const double rigorous = 2.0 * certify(fn, iv, p, CertificateKind::sup_f2).bound;
            REQUIRE(t1.lhs <= rigorous + 1e-10 * (1.0 + rigorous));
        }
    }
}

TEST_CASE("audit_run determinism and controls") {
    const FamilySpec cubic_family{"cubic", iv12};
    const AuditReport one = audit_run({"H1"}, cubic_family, 1, 0);
    REQUIRE(one.audits.size() == 1);
    CHECK_THAT(one.audits[0].lhs, WithinAbs(0.375, 1e-12));
    CHECK_THAT(one.audits[0].slack, WithinAbs(-0.3125, 1e-12));
    CHECK_FALSE(one.audits[0].satisfied);

    const FamilySpec convex{"convex-all", iv12};
    const AuditReport hh = audit_run({"HH"}, convex, 100, 7);
    CHECK(hh.summary.at("HH").evaluated == 100);
    CHECK(hh.summary.at("HH").satisfied == 100);
    CHECK(hh.summary.at("HH").violated == 0);

    const AuditReport lin = audit_run({"T1"}, {"linear", unit}, 5, 3);
    CHECK(lin.summary.at("T1").satisfied == 5);
    for (const auto& row : lin.audits)
        CHECK_THAT(row.lhs, WithinAbs(0.0, 1e-12));

    // identical config, identical report
    const AuditReport again = audit_run({"H1"}, cubic_family, 1, 0);
    CHECK(again.audits[0].lhs == one.audits[0].lhs);
    CHECK(again.audits[0].rhs == one.audits[0].rhs);

    CHECK_THROWS_AS(audit_run({"XX"}, cubic_family, 1, 0), std::domain_error);
    CHECK_THROWS_AS(audit_run({"H1"}, cubic_family, 0, 0), std::domain_error);
}

TEST_CASE("audit_run covers means claims") {
    const FamilySpec fam{"cubic", iv12};
    const AuditReport rep = audit_run({"M1", "M3", "M5"}, fam, 3, 9);
    CHECK(rep.summary.at("M1").evaluated == 3);
    CHECK(rep.summary.at("M3").evaluated == 6); // both variants
    CHECK(rep.summary.at("M5").evaluated == 3);
}
