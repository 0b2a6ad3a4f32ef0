// corrq: certified corrected-rule integration, inequality audits, special
// means, and identity self-checks.
//
// Exit codes: 0 success (audit violations are findings, not failures),
// 1 usage or domain error, 2 integrate non-convergence (partial result is
// still emitted), 3 identity-check residual failure.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <corrq/corrq.hpp>

using json = nlohmann::ordered_json;
using namespace corrq;

namespace {

// shortest round-trip decimal for binary64, so reports are diff-stable
std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, sep))
        if (!tok.empty())
            out.push_back(tok);
    return out;
}

void emit(const std::string& body, const std::string& output, const std::string& command,
          const std::string& ext) {
    std::string path = output;
    if (path.empty()) {
        if (const char* dir = std::getenv("CORRQ_REPORT_DIR"))
            path = (std::filesystem::path(dir) / (command + "_report." + ext)).string();
    }
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

json audit_to_json(const BoundAudit& row, std::uint64_t seed) {
    json j;
    j["claim_id"] = row.claim_id;
    j["lhs"] = row.lhs;
    j["rhs"] = row.rhs;
    j["slack"] = row.slack;
    j["satisfied"] = row.satisfied;
    j["norm_choice"] = to_string(row.norm_choice);
    j["variant"] = row.inputs.variant;
    j["integrand"] = row.inputs.integrand;
    j["a"] = row.inputs.a;
    j["b"] = row.inputs.b;
    j["x"] = row.inputs.x;
    j["alpha"] = row.inputs.alpha;
    j["beta"] = row.inputs.beta;
    j["hypothesis_flags"] = row.inputs.hypothesis_flags;
    j["seed"] = seed;
    return j;
}

std::string csv_field(double v) { return std::isnan(v) ? "" : fmt(v); }

std::string audit_csv(const std::vector<BoundAudit>& rows, std::uint64_t seed) {
    std::string out =
        "claim_id,lhs,rhs,slack,satisfied,norm_choice,variant,integrand,a,b,x,alpha,beta,"
        "hypothesis_flags,seed\n";
    for (const auto& r : rows) {
        out += r.claim_id + ',' + csv_field(r.lhs) + ',' + csv_field(r.rhs) + ',' +
               csv_field(r.slack) + ',' + (r.satisfied ? "true" : "false") + ',' +
               to_string(r.norm_choice) + ',' + r.inputs.variant + ',' + r.inputs.integrand +
               ',' + csv_field(r.inputs.a) + ',' + csv_field(r.inputs.b) + ',' +
               csv_field(r.inputs.x) + ',' + csv_field(r.inputs.alpha) + ',' +
               csv_field(r.inputs.beta) + ',' + join(r.inputs.hypothesis_flags, ';') + ',' +
               std::to_string(seed) + '\n';
    }
    return out;
}

std::string audit_text(const std::vector<BoundAudit>& rows) {
    std::string out;
    for (const auto& r : rows) {
        out += r.claim_id;
        if (!r.inputs.variant.empty())
            out += "/" + r.inputs.variant;
        out += "  " + std::string(r.satisfied ? "satisfied" : "VIOLATED") +
               "  lhs=" + fmt(r.lhs) + "  rhs=" + fmt(r.rhs) + "  slack=" + fmt(r.slack) +
               "  [" + r.inputs.integrand + "]";
        if (!r.inputs.hypothesis_flags.empty())
            out += "  flags=" + join(r.inputs.hypothesis_flags, ';');
        out += '\n';
    }
    return out;
}

struct CommonOpts {
    double a = 0.0, b = 1.0;
    std::string format = "text";
    std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--a", o.a, "interval left endpoint")->required();
    cmd->add_option("--b", o.b, "interval right endpoint")->required();
    cmd->add_option("--format", o.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--output,-o", o.output, "output path ('-' for stdout)");
}

int run_integrate(const CommonOpts& o, const std::string& fn_spec, double tol,
                  const std::string& policy_name, const std::string& kind_name,
                  std::optional<double> supplied, std::size_t max_panels) {
    const Interval iv{o.a, o.b};
    const Integrand fn = make_builtin(fn_spec);
    const ParamsPolicy policy =
        policy_name == "corollary2" ? ParamsPolicy(corollary2_policy) : ParamsPolicy(midpoint_policy);
    const CertificateKind kind =
        kind_name == "l1" ? CertificateKind::l1_f2 : CertificateKind::sup_f2;

    QuadratureResult result{};
    int status = 0;
    try {
        result = integrate_adaptive(fn, iv, tol, policy, kind, max_panels, supplied);
    } catch (const NonConvergenceError& e) {
        result = e.partial;
        status = 2;
    }

    std::string body;
    if (o.format == "json") {
        json j;
        j["command"] = "integrate";
        j["integrand"] = fn.label;
        j["a"] = o.a;
        j["b"] = o.b;
        j["tol"] = tol;
        j["estimate"] = result.estimate;
        j["certified_error"] = result.certified_error;
        j["panels"] = result.panels;
        j["converged"] = status == 0;
        body = j.dump(2) + "\n";
    } else if (o.format == "csv") {
        body = "estimate,certified_error,panels,converged\n" + fmt(result.estimate) + ',' +
               fmt(result.certified_error) + ',' + std::to_string(result.panels) + ',' +
               (status == 0 ? "true" : "false") + '\n';
    } else {
        body = "estimate        " + fmt(result.estimate) + "\ncertified_error " +
               fmt(result.certified_error) + "\npanels          " +
               std::to_string(result.panels) +
               (status == 0 ? "" : "\nWARNING: tolerance not reached (partial result)") + "\n";
    }
    emit(body, o.output, "integrate", o.format == "text" ? "txt" : o.format);
    return status;
}

int run_audit(const CommonOpts& o, const std::string& claims_arg, const std::string& family,
              std::size_t n, std::uint64_t seed, double p) {
    const FamilySpec spec{family, Interval{o.a, o.b}, p};
    const AuditReport report = audit_run(split(claims_arg, ','), spec, n, seed);

    std::string body;
    if (o.format == "json") {
        json j;
        j["command"] = "audit";
        j["family"] = report.family;
        j["seed"] = report.seed;
        j["rows"] = json::array();
        for (const auto& row : report.audits)
            j["rows"].push_back(audit_to_json(row, report.seed));
        json sum;
        for (const auto& [id, s] : report.summary) {
            sum[id] = {{"evaluated", s.evaluated},
                       {"satisfied", s.satisfied},
                       {"violated", s.violated},
                       {"max_violation", s.max_violation},
                       {"max_slack", s.max_slack}};
        }
        j["summary"] = sum;
        body = j.dump(2) + "\n";
    } else if (o.format == "csv") {
        body = audit_csv(report.audits, report.seed);
    } else {
        body = audit_text(report.audits);
        body += "--\n";
        for (const auto& [id, s] : report.summary)
            body += id + ": " + std::to_string(s.satisfied) + "/" +
                    std::to_string(s.evaluated) + " satisfied, " +
                    std::to_string(s.violated) + " violated\n";
    }
    emit(body, o.output, "audit", o.format == "text" ? "txt" : o.format);
    return 0;
}

int run_means(const CommonOpts& o, const std::string& claims_arg, double p) {
    const MeanSet m = means_compute(o.a, o.b);
    const BoundAudit chain = chain_check(o.a, o.b);

    std::vector<BoundAudit> rows;
    const std::vector<std::string> claims =
        claims_arg.empty() ? std::vector<std::string>{"M1", "M2", "M3", "M4", "M5"}
                           : split(claims_arg, ',');
    if (o.a != o.b) {
        double lo = std::min(o.a, o.b), hi = std::max(o.a, o.b);
        for (const auto& id : claims) {
            const std::optional<double> pp =
                (id == "M1" || id == "M3") ? std::optional<double>(p) : std::nullopt;
            if (id == "M3" || id == "M4") {
                rows.push_back(claim_means(id, lo, hi, pp, MeansVariant::literal));
                rows.push_back(claim_means(id, lo, hi, pp, MeansVariant::corrected));
            } else {
                rows.push_back(claim_means(id, lo, hi, pp));
            }
        }
    }

    std::string body;
    if (o.format == "json") {
        json j;
        j["command"] = "means";
        j["a"] = o.a;
        j["b"] = o.b;
        j["means"] = {{"A", m.A}, {"G", m.G}, {"H", m.H}, {"L", m.L}, {"I", m.I},
                      {"Lp", m.lp(p)}, {"p", p}};
        j["chain_satisfied"] = chain.satisfied;
        j["claims"] = json::array();
        for (const auto& row : rows)
            j["claims"].push_back(audit_to_json(row, 0));
        body = j.dump(2) + "\n";
    } else if (o.format == "csv") {
        body = "A,G,H,L,I,Lp,chain_satisfied\n" + fmt(m.A) + ',' + fmt(m.G) + ',' + fmt(m.H) +
               ',' + fmt(m.L) + ',' + fmt(m.I) + ',' + fmt(m.lp(p)) + ',' +
               (chain.satisfied ? "true" : "false") + '\n';
        if (!rows.empty())
            body += '\n' + audit_csv(rows, 0);
    } else {
        body = "A  " + fmt(m.A) + "\nG  " + fmt(m.G) + "\nH  " + fmt(m.H) + "\nL  " +
               fmt(m.L) + "\nI  " + fmt(m.I) + "\nLp(" + fmt(p) + ")  " + fmt(m.lp(p)) +
               "\nchain H<=G<=L<=I<=A: " + (chain.satisfied ? "satisfied" : "VIOLATED") + "\n";
        if (!rows.empty())
            body += audit_text(rows);
    }
    emit(body, o.output, "means", o.format == "text" ? "txt" : o.format);
    return 0;
}

int run_identity_check(const CommonOpts& o, const std::string& family, std::size_t n,
                       std::uint64_t seed) {
    const Interval iv{o.a, o.b};
    std::vector<Integrand> fns;
    if (family == "corrupt") {
        // deliberately wrong derivative: self-test of the residual gate
        Integrand bad = builtin_poly({0.0, 0.0, 0.0, 1.0});
        bad.df = [](double t) { return 2.0 * t * t; };
        bad.label = "corrupt-cubic";
        fns.push_back(bad);
    } else {
        fns = family_integrands({family, iv});
    }

    std::mt19937_64 rng(seed);
    struct Row {
        std::string label;
        RuleParams params;
        double lhs, residual;
        bool ok;
    };
    std::vector<Row> rows;
    bool all_ok = true;
    for (const auto& fn : fns) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x = uniform(rng, iv.a, iv.midpoint());
            const double alpha = uniform(rng, iv.a, iv.b);
            const double beta = uniform(rng, alpha, iv.b);
            const RuleParams p{x, alpha, beta};
            const IdentityEval ev = evaluate_identity(fn, iv, p);
            const bool ok = ev.residual <= 1e-8 * (1.0 + std::abs(ev.lhs));
            all_ok = all_ok && ok;
            rows.push_back({fn.label, p, ev.lhs, ev.residual, ok});
        }
    }

    std::string body;
    if (o.format == "json") {
        json j;
        j["command"] = "identity-check";
        j["family"] = family;
        j["seed"] = seed;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"integrand", r.label},
                                 {"x", r.params.x},
                                 {"alpha", r.params.alpha},
                                 {"beta", r.params.beta},
                                 {"lhs", r.lhs},
                                 {"residual", r.residual},
                                 {"ok", r.ok}});
        j["all_ok"] = all_ok;
        body = j.dump(2) + "\n";
    } else if (o.format == "csv") {
        body = "integrand,x,alpha,beta,lhs,residual,ok\n";
        for (const auto& r : rows)
            body += r.label + ',' + fmt(r.params.x) + ',' + fmt(r.params.alpha) + ',' +
                    fmt(r.params.beta) + ',' + fmt(r.lhs) + ',' + fmt(r.residual) + ',' +
                    (r.ok ? "true" : "false") + '\n';
    } else {
        for (const auto& r : rows)
            body += std::string(r.ok ? "ok  " : "BAD ") + r.label +
                    "  residual=" + fmt(r.residual) + "  lhs=" + fmt(r.lhs) + '\n';
        body += all_ok ? "identity holds\n" : "identity RESIDUAL FAILURE\n";
    }
    emit(body, o.output, "identity-check", o.format == "text" ? "txt" : o.format);
    return all_ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"corrected quadrature rules with certified error bounds and "
                 "numerical audits of the underlying inequalities"};
    app.require_subcommand(1);

    CommonOpts io, ao, mo, no;

    auto* integrate = app.add_subcommand("integrate", "certified adaptive integration");
    std::string fn_spec = "exp";
    double tol = 1e-6;
    std::string policy = "midpoint", kind = "sup";
    double m2 = 0.0, vtot = 0.0;
    std::size_t max_panels = std::size_t{1} << 16;
    integrate->add_option("--fn", fn_spec, "builtin integrand spec (exp, recip, power:3, poly:0,1, ...)");
    integrate->add_option("--tol", tol, "target certified error");
    integrate->add_option("--policy", policy, "midpoint | corollary2")
        ->check(CLI::IsMember({"midpoint", "corollary2"}));
    integrate->add_option("--kind", kind, "certificate kind: sup | l1")
        ->check(CLI::IsMember({"sup", "l1"}));
    auto* m2_opt = integrate->add_option("--m2", m2, "explicit bound on sup |f''|");
    auto* v_opt = integrate->add_option("--v", vtot, "explicit bound on integral of |f''|");
    integrate->add_option("--max-panels", max_panels, "panel limit");
    add_common(integrate, io);

    auto* audit = app.add_subcommand("audit", "batch inequality audit");
    std::string claims = "T1", family = "builtin";
    std::size_t n_samples = 1;
    std::uint64_t seed = 0;
    double p_exp = 3.0;
    audit->add_option("--claims", claims, "comma list: T1,T2,P6,P7,H1,H2,P11,R12,HH,M1..M5")
        ->required();
    audit->add_option("--family", family, "integrand family or builtin spec");
    audit->add_option("-n,--samples", n_samples, "seeded samples per claim");
    audit->add_option("--seed", seed, "RNG seed");
    audit->add_option("--p", p_exp, "exponent for power-based claims");
    add_common(audit, ao);

    auto* means = app.add_subcommand("means", "special means table and claims");
    std::string means_claims;
    double means_p = 3.0;
    means->add_option("--claims", means_claims, "subset of M1..M5 (default: all)");
    means->add_option("--p", means_p, "exponent for M1/M3 and the Lp column");
    add_common(means, mo);

    auto* idcheck = app.add_subcommand("identity-check", "numeric check of the core identity");
    std::string id_family = "builtin";
    std::size_t id_n = 20;
    std::uint64_t id_seed = 1;
    idcheck->add_option("--family", id_family, "integrand family, builtin spec, or 'corrupt'");
    idcheck->add_option("-n,--samples", id_n, "seeded parameter draws per integrand");
    idcheck->add_option("--seed", id_seed, "RNG seed");
    add_common(idcheck, no);

    CLI11_PARSE(app, argc, argv);

    try {
        if (integrate->parsed()) {
            std::optional<double> supplied;
            if (m2_opt->count() && kind == "sup")
                supplied = m2;
            if (v_opt->count() && kind == "l1")
                supplied = vtot;
            return run_integrate(io, fn_spec, tol, policy, kind, supplied, max_panels);
        }
        if (audit->parsed())
            return run_audit(ao, claims, family, n_samples, seed, p_exp);
        if (means->parsed())
            return run_means(mo, means_claims, means_p);
        if (idcheck->parsed())
            return run_identity_check(no, id_family, id_n, id_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
