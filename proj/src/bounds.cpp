#include "pgap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pgap/errors.hpp"

namespace pgap {

namespace {

void require_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw InvalidParameter("p must be a finite number > 1, got " + std::to_string(p));
    }
}

double product_rule_f(double p, double x) {
    return (p - x) * std::pow(x, p - 1.0) + std::pow(1.0 - x, p);
}

// Golden-section search for a maximum of a unimodal function on [lo, hi].
template <class F>
double golden_max_arg(F&& f, double lo, double hi, double xtol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

ProblemParams ProblemParams::make(double p, int n_dim) {
    require_p(p);
    if (n_dim < 1) {
        throw InvalidParameter("dimension N must be >= 1, got " + std::to_string(n_dim));
    }
    return ProblemParams{p, n_dim, p / (p - 1.0)};
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::PLe2N1: return "P_LE_2_N1";
        case Regime::PLe2NGe2: return "P_LE_2_NGE2";
        case Regime::PGe2N1: return "P_GE_2_N1";
        case Regime::PGe2NGe2: return "P_GE_2_NGE2";
    }
    return "unknown";
}

std::string_view to_string(GapKind kind) noexcept {
    return kind == GapKind::LambdaDifference ? "lambda2-lambda1" : "lambda2-k_hat*lambda1";
}

double product_rule_max(double p) {
    require_p(p);
    constexpr int kGrid = 1024;
    auto f = [p](double x) { return product_rule_f(p, x); };

    int best = 0;
    double best_val = f(0.0);
    for (int i = 1; i < kGrid; ++i) {
        const double x = static_cast<double>(i) / (kGrid - 1);
        const double v = f(x);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double lo = static_cast<double>(std::max(best - 1, 0)) / (kGrid - 1);
    const double hi = static_cast<double>(std::min(best + 1, kGrid - 1)) / (kGrid - 1);
    const double x_star = golden_max_arg(f, lo, hi, 1e-10);
    return std::max({best_val, f(x_star), f(0.0), f(1.0)});
}

double compute_m(double p) {
    require_p(p);
    if (p > 2.0) {
        throw InvalidParameter("compute_m is defined for 1 < p <= 2; use constants_table for p > 2");
    }
    return std::pow(product_rule_max(p), 1.0 / p);
}

BoundConstants constants_table(const ProblemParams& params) {
    const double p = params.p;
    require_p(p);
    BoundConstants c;
    c.m_from_maximization = std::pow(product_rule_max(p), 1.0 / p);
    if (p >= 2.0) {
        const double k = std::pow(p, 2.0 - p) * std::pow(p - 1.0, p - 1.0);
        c.m = p - 1.0;
        if (params.n_dim == 1) {
            c.regime = Regime::PGe2N1;
            c.m_hat = c.m;
            c.k_hat = k;
        } else {
            c.regime = Regime::PGe2NGe2;
            c.m_hat = std::pow(2.0, (p - 2.0) / (2.0 * p)) * (p - 1.0);
            c.k_hat = std::pow(2.0, (p - 2.0) / 2.0) * k;
        }
    } else {
        c.m = c.m_from_maximization;
        c.k_hat = 1.0;
        if (params.n_dim == 1) {
            c.regime = Regime::PLe2N1;
            c.m_hat = c.m;
        } else {
            c.regime = Regime::PLe2NGe2;
            c.m_hat = std::pow(2.0, (2.0 - p) / (2.0 * p)) * c.m;
        }
    }
    return c;
}

namespace {

std::optional<double> gamma_eq6(const ProblemParams& params, const BoundConstants& c) {
    const double p = params.p;
    const double n = params.n_dim;
    if (p > 2.0 || !(n > p)) return std::nullopt;
    return std::pow(c.m_hat, p) * n * std::pow(p / (n - p), p);
}

std::optional<double> gamma_eq8(const ProblemParams& params, const BoundConstants& c) {
    const double p = params.p;
    if (p < 2.0) return std::nullopt;
    const double n = params.n_dim;
    return std::pow(c.m_hat, p) * std::pow(n, -p / 2.0) * std::pow(p, p);
}

[[noreturn]] void throw_no_bound(const ProblemParams& params) {
    throw NoBoundAvailable("N > p", "no ratio bound for p = " + std::to_string(params.p) +
                                        ", N = " + std::to_string(params.n_dim) +
                                        ": hypothesis N > p fails and p < 2");
}

}  // namespace

RatioBound ratio_bound(const ProblemParams& params) {
    const auto c = constants_table(params);
    const auto g6 = gamma_eq6(params, c);
    const auto g8 = gamma_eq8(params, c);
    if (!g6 && !g8) throw_no_bound(params);

    RatioBound r;
    if (g6) r.ratio_bound_eq7 = 1.0 + *g6;
    if (g8) r.ratio_bound_eq9 = c.k_hat + *g8;
    r.best = std::min(r.ratio_bound_eq7.value_or(INFINITY), r.ratio_bound_eq9.value_or(INFINITY));
    r.gamma_bound = gamma_bound(params, 1.0).value;
    return r;
}

GammaBound gamma_bound(const ProblemParams& params, double lambda1) {
    if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
        throw InvalidParameter("lambda1 must be positive and finite");
    }
    const auto c = constants_table(params);
    const auto g6 = gamma_eq6(params, c);
    const auto g8 = gamma_eq8(params, c);
    if (!g6 && !g8) throw_no_bound(params);

    // k_hat = 1 at p = 2, so both gap definitions coincide where both branches exist.
    if (g8 && (!g6 || *g8 <= *g6)) {
        return GammaBound{*g8 * lambda1, GapKind::KHatDifference, c.k_hat};
    }
    return GammaBound{*g6 * lambda1, GapKind::LambdaDifference, 1.0};
}

Corollary4Check corollary4_check(const ProblemParams& params, double ratio) {
    if (params.p < 2.0) {
        throw InvalidParameter("finite-p check requires p >= 2");
    }
    const auto c = constants_table(params);
    Corollary4Check out;
    out.lhs = std::pow(ratio, 1.0 / params.p) / params.p;
    out.rhs = c.m_hat / std::sqrt(static_cast<double>(params.n_dim));
    out.satisfied = out.lhs <= out.rhs * (1.0 + kBoundRelTol);
    return out;
}

}  // namespace pgap
