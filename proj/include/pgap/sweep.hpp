#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgap/audit.hpp"
#include "pgap/solver_nd.hpp"

namespace pgap {

/// Named box domains: "interval" (0,1), "square" (0,1)^2, "cube" (0,1)^3,
/// "rect" (0,2)x(0,1), or "box:AxB[xC]" for (0,A)x(0,B)[x(0,C)].
MeshedDomain make_named_domain(const std::string& name, int grid);

struct InstanceOptions {
    double tol = 1e-8;
    int max_iter = 20000;
    int axis = 0;  ///< Split axis for the upper estimate of lambda_2.
};

/// One solved (p, domain) instance and its ratio-bound verdict.
struct InstanceResult {
    double p = 2.0;
    int n_dim = 1;
    std::string domain;
    int grid = 0;
    Eigenpair eig1;
    double lambda2 = 0.0;
    EstimateKind estimate_kind = EstimateKind::Exact;
    std::optional<SplitUpperBound> split;
    double ratio = 0.0;
    std::optional<double> bound_eq7;
    std::optional<double> bound_eq9;
    std::optional<double> best_bound;  ///< Empty when no bound applies (1 < p < 2, N = 1).
    bool satisfied = false;
    bool inconclusive = false;
    bool falsified = false;
};

/// Allowance credited to computed ratios when comparing against the bound.
inline constexpr double kRatioAllowance = 0.02;

/// lambda_1 from the grid solver; lambda_2 exact for p = 2 (closed form) and N = 1
/// (shooting), otherwise the splitting upper estimate.
InstanceResult solve_instance(const std::string& domain_name, double p, int grid,
                              const InstanceOptions& options = {});

/// Exact or estimated lambda_2 for an already computed principal eigenpair.
double lambda2_for(const MeshedDomain& domain, double p, const Eigenpair& eig1, double tol,
                   int axis, EstimateKind& kind, std::optional<SplitUpperBound>* split = nullptr);

AuditReport audit_instance(const InstanceResult& result);

struct SweepConfig {
    std::vector<double> p_list{1.5, 2.0, 3.0};
    std::vector<int> n_list;  ///< Empty keeps every domain.
    std::vector<std::string> domains{"interval", "square"};
    int grid = 128;
    InstanceOptions instance;
    int jobs = 1;
};

/// Solves every instance (optionally on a worker pool) and returns them sorted by
/// (p, n, domain).
std::vector<InstanceResult> run_sweep(const SweepConfig& config);

inline constexpr const char* kSweepCsvHeader =
    "p,n,domain,grid,lambda1,lambda2,estimate_kind,ratio,bound_eq7,bound_eq9,best_bound,"
    "satisfied,inconclusive";

std::string sweep_csv(const std::vector<InstanceResult>& rows);

/// 12 significant digits, the format of every CSV/JSON number.
std::string format_number(double x);

}  // namespace pgap
