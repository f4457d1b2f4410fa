#pragma once

#include <functional>
#include <iosfwd>
#include <string_view>

#include "pgap/errors.hpp"
#include "pgap/grid.hpp"

namespace pgap {

/// (lambda, phi) with phi > 0 and int phi^p = 1.
struct Eigenpair {
    double lambda = 0.0;
    ScalarField phi;
    double residual = 0.0;  ///< Relative dual-norm residual of -Delta_p phi = lambda phi^{p-1}.
    int iterations = 0;
};

/// Raised when the descent hits its iteration cap; carries the best iterate.
class EigenNonConvergence : public NonConvergence {
public:
    EigenNonConvergence(const std::string& what, Eigenpair best)
        : NonConvergence(what), best_(std::move(best)) {}
    [[nodiscard]] const Eigenpair& best() const noexcept { return best_; }

private:
    Eigenpair best_;
};

struct DescentOptions {
    double armijo = 1e-4;      ///< Sufficient-decrease constant.
    int window = 10;           ///< Iterations over which the relative change is measured.
    double min_step = 1e-12;   ///< Smallest trial step before the line search gives up.
    /// Stop once the residual drops below this as well; 0 disables the residual test.
    double residual_tol = 0.0;
    /// Called with (iteration, Rayleigh value) after every accepted step.
    std::function<void(int, double)> observer;
};

/// Minimizes the discrete Rayleigh quotient by preconditioned descent with backtracking
/// (trial steps 1, 1/2, 1/4, ...) and renormalization to int phi^p = 1 after every step.
/// The preconditioner is the inverse Dirichlet Laplacian scaled by
/// sum |grad u|^p / sum |grad u|^2, which makes the unit step exact inverse iteration at p = 2.
/// Starts from the product of half-period sine bumps. Stops when R changes by less than
/// tol (relative) over `window` iterations.
Eigenpair principal_eigenpair(const MeshedDomain& domain, double p, double tol, int max_iter,
                              const DescentOptions& options = {});

/// Continuous Dirichlet Laplacian eigenvalues of the box: pi^2 sum 1/L_i^2 ...
double lambda1_exact_p2(const MeshedDomain& domain);
/// ... and the smallest over multi-indices other than (1, ..., 1).
double lambda2_exact_p2(const MeshedDomain& domain);

/// F_omega(delta) and F_rest(delta): int phi^p / int phi^p |x_j - delta|^p over
/// {x_j < delta} and {x_j > delta}.
struct SplitRatios {
    double inside = 0.0;
    double outside = 0.0;
    double whole = 0.0;  ///< The same ratio over the whole domain.
};

SplitRatios split_ratios(const ScalarField& phi, double p, int axis, double delta);

/// The split coordinate where F_omega = F_rest, by bisection over the open extent of the axis.
/// Throws NumericalDegeneracy if no sign change is found.
double find_delta_star(const ScalarField& phi, double p, int axis);

enum class SplitEndpoint {
    Inside,   ///< (alpha, beta) = (1, 0): the part on {x_j < delta}
    Outside,  ///< (alpha, beta) = (0, 1): the part on {x_j > delta}
};

std::string_view to_string(SplitEndpoint e) noexcept;

/// Upper estimate of lambda_2 from the two-parameter family phi (x_j - delta) (alpha on
/// omega, beta elsewhere), |alpha|^p + |beta|^p = 1.
struct SplitUpperBound {
    double value = 0.0;
    double delta = 0.0;
    int axis = 0;
    SplitEndpoint endpoint = SplitEndpoint::Inside;
    double numerator_inside = 0.0;
    double denominator_inside = 0.0;
    double numerator_outside = 0.0;
    double denominator_outside = 0.0;

    /// (a t + b (1 - t)) / (c t + d (1 - t)) with t = |alpha|^p.
    [[nodiscard]] double mixed_quotient(double t) const;
};

SplitUpperBound lambda2_upper_via_splitting(const MeshedDomain& domain, double p,
                                            const Eigenpair& eig1, int axis);

/// Eigenpair snapshot: a metadata line "p=... lambda=... residual=... iterations=..."
/// followed by the field snapshot.
void write_eigenpair(std::ostream& out, const Eigenpair& eig, double p);
Eigenpair read_eigenpair(std::istream& in, double* p_out = nullptr);

}  // namespace pgap
