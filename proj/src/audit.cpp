#include "pgap/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "pgap/bounds.hpp"

namespace pgap {

std::string_view to_string(EstimateKind kind) noexcept {
    return kind == EstimateKind::Exact ? "EXACT" : "UPPER";
}

std::string_view to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::Satisfied: return "satisfied";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Falsified: return "falsified";
    }
    return "unknown";
}

namespace {

// Entries whose lhs contains lambda_2 are one-sided when lambda_2 is only an upper estimate.
bool depends_on_lambda2(const std::string& name) {
    return name.rfind("eq14", 0) == 0 || name.rfind("eq15", 0) == 0 ||
           name.rfind("eq18", 0) == 0 || name.rfind("theorem1", 0) == 0;
}

}  // namespace

Verdict AuditReport::verdict() const {
    bool inconclusive = false;
    for (const auto& e : entries) {
        if (!e.preconditions_met || e.satisfied) continue;
        if (instance.estimate_kind == EstimateKind::Upper && depends_on_lambda2(e.name)) {
            inconclusive = true;
        } else {
            return Verdict::Falsified;
        }
    }
    return inconclusive ? Verdict::Inconclusive : Verdict::Satisfied;
}

AuditEntry audit_lemma2(const Eigenpair& eig1, double p, std::span<const double> origin,
                        double allowance) {
    const MeshedDomain& d = eig1.phi.domain;
    const int n = d.n_dim();
    if (!(n > p)) return precondition_failure("lemma2_hardy");
    const auto o = d.off_node(origin);
    const double lhs = weighted_moment(eig1.phi, p, o, NormKind::L2, ExponentSign::Minus);
    const double rhs = std::pow(p / (n - p), p) * eig1.lambda;
    return make_entry("lemma2_hardy", lhs, rhs, allowance);
}

AuditEntry audit_lemma3(const Eigenpair& eig1, double p, std::span<const double> origin,
                        double allowance) {
    if (p < 2.0) return precondition_failure("lemma3");
    const MeshedDomain& d = eig1.phi.domain;
    const double moment = weighted_moment(eig1.phi, p, origin, NormKind::L2, ExponentSign::Plus);
    const double rhs = std::pow(p / d.n_dim(), p) * eig1.lambda;
    return make_entry("lemma3", 1.0 / moment, rhs, allowance);
}

std::vector<AuditEntry> audit_lemma3_origins(const Eigenpair& eig1, double p, double allowance,
                                             int extra, std::uint32_t seed) {
    const MeshedDomain& d = eig1.phi.domain;
    std::vector<AuditEntry> out;
    const auto c = d.center();
    auto e = audit_lemma3(eig1, p, c, allowance);
    e.name += "[center]";
    out.push_back(std::move(e));

    std::mt19937 rng(seed);
    for (int i = 0; i < extra; ++i) {
        std::array<double, kMaxDim> o{};
        for (int ax = 0; ax < d.n_dim(); ++ax) {
            std::uniform_real_distribution<double> dist(d.low(ax), d.high(ax));
            o[static_cast<std::size_t>(ax)] = dist(rng);
        }
        auto r = audit_lemma3(eig1, p, o, allowance);
        r.name += "[origin" + std::to_string(i + 1) + "]";
        out.push_back(std::move(r));
    }
    return out;
}

AuditReport audit_proof_chain(const Eigenpair& eig1, double lambda2, double p,
                              EstimateKind kind, double allowance) {
    const MeshedDomain& d = eig1.phi.domain;
    const int n = d.n_dim();
    const auto params = ProblemParams::make(p, n);
    const auto consts = constants_table(params);
    const double lambda1 = eig1.lambda;
    const double mp = std::pow(consts.m_hat, p);
    const double gap = lambda2 - consts.k_hat * lambda1;

    AuditReport report;
    report.instance.p = p;
    report.instance.n_dim = n;
    report.instance.lambda1 = lambda1;
    report.instance.lambda2 = lambda2;
    report.instance.estimate_kind = kind;
    report.instance.allowance = allowance;
    auto& entries = report.entries;

    std::array<double, kMaxDim> origin{};
    for (int ax = 0; ax < n; ++ax) {
        const double delta = find_delta_star(eig1.phi, p, ax);
        origin[static_cast<std::size_t>(ax)] = delta;
        report.instance.origin.push_back(delta);
        const auto r = split_ratios(eig1.phi, p, ax, delta);
        entries.push_back(make_entry("eq14[axis" + std::to_string(ax) + "]", gap,
                                     mp * std::max(r.inside, r.outside), allowance));
    }

    const double moment_lp = weighted_moment(eig1.phi, p, origin, NormKind::Lp, ExponentSign::Plus);
    entries.push_back(make_entry("eq15", gap, mp * n / moment_lp, allowance));

    const double mass = lp_integral(eig1.phi, p);
    if (p <= 2.0) {
        const auto safe = d.off_node(origin);
        const double moment_lp_safe = weighted_moment(eig1.phi, p, safe, NormKind::Lp, ExponentSign::Plus);
        const double inverse_lp = weighted_moment(eig1.phi, p, safe, NormKind::Lp, ExponentSign::Minus);
        entries.push_back(make_entry("eq16", mass * mass, moment_lp_safe * inverse_lp, allowance));
    } else {
        entries.push_back(precondition_failure("eq16"));
    }

    if (p <= 2.0 && n > p) {
        entries.push_back(make_entry("eq17", mass * mass,
                                     std::pow(p / (n - p), p) * lambda1 * moment_lp, allowance));
    } else {
        entries.push_back(precondition_failure("eq17"));
    }

    if (p >= 2.0) {
        const double moment_l2 = weighted_moment(eig1.phi, p, origin, NormKind::L2, ExponentSign::Plus);
        entries.push_back(make_entry("eq18", gap, mp * std::pow(n, p / 2.0) / moment_l2, allowance));
    } else {
        entries.push_back(precondition_failure("eq18"));
    }

    try {
        const auto gb = gamma_bound(params, lambda1);
        const auto rb = ratio_bound(params);
        const bool eq8 = gb.kind == GapKind::KHatDifference;
        entries.push_back(make_entry(eq8 ? "theorem1_eq8" : "theorem1_eq6",
                                     lambda2 - gb.k_hat * lambda1, gb.value, allowance));
        const bool best_is_eq9 = rb.ratio_bound_eq9 && *rb.ratio_bound_eq9 == rb.best;
        entries.push_back(make_entry(best_is_eq9 ? "theorem1_eq9" : "theorem1_eq7",
                                     lambda2 / lambda1, rb.best, allowance));
    } catch (const NoBoundAvailable&) {
        entries.push_back(precondition_failure("theorem1_gap"));
        entries.push_back(precondition_failure("theorem1_ratio"));
    }
    return report;
}

AuditReport full_audit(const Eigenpair& eig1, double lambda2, double p, EstimateKind kind,
                       double allowance) {
    AuditReport chain = audit_proof_chain(eig1, lambda2, p, kind, allowance);
    AuditReport report;
    report.instance = chain.instance;
    const auto c = eig1.phi.domain.center();
    report.entries.push_back(audit_lemma2(eig1, p, c, allowance));
    for (auto& e : audit_lemma3_origins(eig1, p, allowance)) report.entries.push_back(std::move(e));
    for (auto& e : chain.entries) report.entries.push_back(std::move(e));
    return report;
}

double round_sig12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

nlohmann::ordered_json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round_sig12(x);
}

}  // namespace

nlohmann::ordered_json to_json(const AuditReport& report) {
    nlohmann::ordered_json inst;
    const auto& in = report.instance;
    inst["p"] = number(in.p);
    inst["n"] = in.n_dim;
    inst["domain"] = in.domain;
    inst["grid"] = in.grid;
    inst["lambda1"] = number(in.lambda1);
    inst["lambda2"] = number(in.lambda2);
    inst["estimate_kind"] = to_string(in.estimate_kind);
    inst["one_sided"] = in.estimate_kind == EstimateKind::Upper;
    inst["allowance"] = number(in.allowance);
    auto origin = nlohmann::ordered_json::array();
    for (double x : in.origin) origin.push_back(number(x));
    inst["origin"] = origin;
    inst["verdict"] = to_string(report.verdict());

    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json j;
        j["name"] = e.name;
        j["lhs"] = number(e.lhs);
        j["rhs"] = number(e.rhs);
        j["slack"] = number(e.slack);
        j["satisfied"] = e.satisfied;
        j["preconditions_met"] = e.preconditions_met;
        entries.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["instance"] = std::move(inst);
    out["entries"] = std::move(entries);
    return out;
}

}  // namespace pgap
