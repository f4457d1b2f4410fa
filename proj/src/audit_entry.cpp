#include "pgap/audit_entry.hpp"

#include <cmath>
#include <limits>

namespace pgap {

AuditEntry make_entry(std::string name, double lhs, double rhs, double allowance) {
    AuditEntry e;
    e.name = std::move(name);
    e.lhs = lhs;
    e.rhs = rhs;
    e.slack = rhs - lhs;
    e.allowance = allowance;
    e.preconditions_met = true;
    e.satisfied = e.slack >= -(kAuditRelTol + allowance) * std::abs(rhs);
    return e;
}

AuditEntry precondition_failure(std::string name) {
    AuditEntry e;
    e.name = std::move(name);
    e.lhs = std::numeric_limits<double>::quiet_NaN();
    e.rhs = std::numeric_limits<double>::quiet_NaN();
    e.slack = std::numeric_limits<double>::quiet_NaN();
    e.satisfied = false;
    e.preconditions_met = false;
    return e;
}

}  // namespace pgap
