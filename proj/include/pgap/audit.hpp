#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pgap/audit_entry.hpp"
#include "pgap/solver_nd.hpp"

namespace pgap {

/// How the lambda_2 value fed into an audit was obtained.
enum class EstimateKind {
    Exact,  ///< closed form or 1D shooting
    Upper,  ///< only an upper estimate (splitting construction)
};

std::string_view to_string(EstimateKind kind) noexcept;

enum class Verdict { Satisfied, Inconclusive, Falsified };

std::string_view to_string(Verdict verdict) noexcept;

/// Descriptive data carried alongside the entries; written to the "instance" object.
struct AuditInstance {
    double p = 2.0;
    int n_dim = 1;
    std::string domain;
    int grid = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    EstimateKind estimate_kind = EstimateKind::Exact;
    double allowance = 0.0;
    std::vector<double> origin;  ///< Per-axis balancing coordinates used as the origin.
};

struct AuditReport {
    AuditInstance instance;
    std::vector<AuditEntry> entries;

    /// Falsified if an applicable entry fails and does not hinge on an upper estimate of
    /// lambda_2; inconclusive if only such one-sided entries fail.
    [[nodiscard]] Verdict verdict() const;
};

/// Hardy inequality  int |phi/||x - origin||_2|^p <= (p/(N-p))^p lambda_1. Needs N > p.
/// The origin is moved off grid nodes if necessary.
AuditEntry audit_lemma2(const Eigenpair& eig1, double p, std::span<const double> origin,
                        double allowance);

/// 1 / int ||x - origin||_2^p phi^p <= (p/N)^p lambda_1. Needs p >= 2.
AuditEntry audit_lemma3(const Eigenpair& eig1, double p, std::span<const double> origin,
                        double allowance);

/// audit_lemma3 at the domain center and at `extra` pseudo-random interior origins drawn
/// from a fixed seed.
std::vector<AuditEntry> audit_lemma3_origins(const Eigenpair& eig1, double p, double allowance,
                                             int extra = 3, std::uint32_t seed = 20040101u);

/// Balanced-split inequality per axis, the l_p moment bound, the Cauchy-Schwarz product,
/// the Hardy-combined bound, the l_2 moment bound and the final gap and ratio bounds.
/// Coordinates are re-centered at the per-axis balancing points.
AuditReport audit_proof_chain(const Eigenpair& eig1, double lambda2, double p,
                              EstimateKind kind, double allowance);

/// Hardy and l2-moment entries at the domain center (the latter also at random origins),
/// followed by the chain.
AuditReport full_audit(const Eigenpair& eig1, double lambda2, double p, EstimateKind kind,
                       double allowance);

/// {"instance": {...}, "entries": [{"name","lhs","rhs","slack","satisfied","preconditions_met"}]}
/// with numbers rounded to 12 significant digits.
nlohmann::ordered_json to_json(const AuditReport& report);

/// Rounds to 12 significant digits (the precision of every machine-readable output).
double round_sig12(double x);

}  // namespace pgap
