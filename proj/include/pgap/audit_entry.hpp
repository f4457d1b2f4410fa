#pragma once

#include <string>
#include <vector>

namespace pgap {

/// One audited inequality lhs <= rhs.
struct AuditEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  ///< rhs - lhs
    bool satisfied = false;
    bool preconditions_met = true;
    /// Relative allowance on |rhs| credited to discretization error (0 for closed forms).
    double allowance = 0.0;
};

/// Relative tolerance applied to every audited inequality on top of its allowance.
inline constexpr double kAuditRelTol = 1e-6;

/// Allowance for inequalities evaluated on computed (discretized) eigenpairs.
inline constexpr double kDiscretizationAllowance = 0.02;

/// Builds an entry and decides `satisfied` as slack >= -(tol + allowance) * |rhs|.
AuditEntry make_entry(std::string name, double lhs, double rhs, double allowance);

/// Entry for an inequality whose hypotheses do not hold for this instance.
AuditEntry precondition_failure(std::string name);

}  // namespace pgap
