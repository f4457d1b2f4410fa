#pragma once

#include <span>
#include <vector>

#include "pgap/audit_entry.hpp"

namespace pgap {

struct Interval1D {
    double a = 0.0;
    double b = 1.0;

    static Interval1D make(double a, double b);
    [[nodiscard]] double length() const noexcept { return b - a; }
};

/// A Dirichlet eigenmode of the 1D p-Laplacian found by shooting.
struct Mode1D {
    int n = 1;
    double lambda = 0.0;
    int zeros = 0;          ///< Interior zeros of the eigenfunction, n - 1 for a valid mode.
    int steps = 0;          ///< Integrator steps used for the final value.
    std::vector<double> u;  ///< Eigenfunction at steps + 1 equispaced nodes, int |u|^p = 1.
};

struct ShootOptions {
    int initial_steps = 4096;
    int max_steps = 1 << 18;
    double initial_slope = 1.0;  ///< v(a); eigenvalues do not depend on it.
    int max_bisections = 400;
    int max_bracket_expansions = 40;
};

/// pi_p = 2 pi / (p sin(pi / p)), half-period of the generalized sine.
double pi_p(double p);

/// (p - 1) (n pi_p / L)^p. Used only as a cross-check for the shooting solver.
double closed_form_eigenvalue_1d(double p, int n, double length);

/// n-th Dirichlet eigenvalue on the interval by shooting on
///   u' = |v|^{p'-2} v,  v' = -lambda |u|^{p-2} u,  (u, v)(a) = (0, slope)
/// with fixed-step RK4. lambda is bisected until the bracket is narrower than tol * lambda,
/// and the step count is doubled until lambda changes by less than tol relatively.
Mode1D shoot_eigenvalue(const Interval1D& interval, double p, int n, double tol,
                        const ShootOptions& options = {});

/// lambda_2 / lambda_1 on any interval: 2^p.
double ratio_1d(double p);

/// One-dimensional Hardy inequality  int |u/x|^p <= (p/(p-1))^p int |u'|^p  for a function
/// sampled at equispaced nodes on [0, length] (both endpoints included). Composite midpoint
/// quadrature. Throws InvalidInput unless the samples vanish at both ends.
AuditEntry hardy_check_1d(std::span<const double> samples, double length, double p);

}  // namespace pgap
