#pragma once

#include <optional>
#include <string_view>

namespace pgap {

/// Exponent p of the p-Laplacian together with the spatial dimension N.
struct ProblemParams {
    double p = 2.0;
    int n_dim = 1;
    double p_conj = 2.0;  ///< Conjugate exponent p' = p / (p - 1).

    /// Validates p > 1 and N >= 1 and fills in p'. Throws InvalidParameter otherwise.
    static ProblemParams make(double p, int n_dim);
};

/// Which row of the constants table applies. At p = 2 the p >= 2 rows are used;
/// both families give identical values there.
enum class Regime { PLe2N1, PLe2NGe2, PGe2N1, PGe2NGe2 };

std::string_view to_string(Regime regime) noexcept;

struct BoundConstants {
    double m = 1.0;
    double m_hat = 1.0;
    double k_hat = 1.0;
    Regime regime = Regime::PGe2N1;
    /// (max_{0<=x<=1} (p-x)x^{p-1} + (1-x)^p)^{1/p}, recorded for every p. For p > 2 this
    /// differs from the tabulated m = p - 1.
    double m_from_maximization = 1.0;
};

struct RatioBound {
    double gamma_bound = 0.0;                ///< Bound on the gap for lambda_1 = 1.
    std::optional<double> ratio_bound_eq7;   ///< 1 + m_hat^p (p/(N-p))^p N; needs p <= 2 and N > p.
    std::optional<double> ratio_bound_eq9;   ///< k_hat + m_hat^p N^{-p/2} p^p; needs p >= 2.
    double best = 0.0;                       ///< Smallest available ratio bound.
};

/// Which gap a GammaBound refers to.
enum class GapKind {
    LambdaDifference,  ///< lambda_2 - lambda_1            (p <= 2, N > p)
    KHatDifference,    ///< lambda_2 - k_hat * lambda_1    (p >= 2)
};

std::string_view to_string(GapKind kind) noexcept;

struct GammaBound {
    double value = 0.0;
    GapKind kind = GapKind::KHatDifference;
    double k_hat = 1.0;  ///< Coefficient of lambda_1 inside the gap.
};

struct Corollary4Check {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

/// Maximum over [0, 1] of f(x) = (p - x) x^{p-1} + (1 - x)^p, before the p-th root.
/// Valid for any p > 1. Coarse 1024-point scan, then golden-section refinement of the
/// best bracket; both endpoints are always candidates.
double product_rule_max(double p);

/// m = product_rule_max(p)^{1/p}. Only defined for 1 < p <= 2; for p > 2 the tabulated
/// value p - 1 is what the bounds consume (see constants_table).
double compute_m(double p);

BoundConstants constants_table(const ProblemParams& params);

/// Throws NoBoundAvailable (hypothesis "N > p") when 1 < p < 2 and N <= p.
RatioBound ratio_bound(const ProblemParams& params);

/// Bound on the gap for a given lambda_1 > 0. Where both branches apply (p = 2, N > 2)
/// the smaller one is returned.
GammaBound gamma_bound(const ProblemParams& params, double lambda1);

/// Finite-p instance of (1/p) (lambda_2/lambda_1)^{1/p} <= m_hat / sqrt(N). Requires p >= 2.
Corollary4Check corollary4_check(const ProblemParams& params, double ratio);

/// Relative tolerance used for comparisons against bound values.
inline constexpr double kBoundRelTol = 1e-9;

}  // namespace pgap
