#include "pgap/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pgap/errors.hpp"

namespace pgap {

namespace {

void require_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw InvalidParameter("p must be a finite number > 1");
    }
}

// |s|^{q-2} s
double signed_power(double s, double q) {
    if (s == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(s), q - 1.0), s);
}

struct ShootingSystem {
    double p;
    double p_conj;
    double lambda;

    void rhs(double u, double v, double& du, double& dv) const {
        du = signed_power(v, p_conj);
        dv = -lambda * signed_power(u, p);
    }

    void step(double& u, double& v, double h) const {
        double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
        rhs(u, v, k1u, k1v);
        rhs(u + 0.5 * h * k1u, v + 0.5 * h * k1v, k2u, k2v);
        rhs(u + 0.5 * h * k2u, v + 0.5 * h * k2v, k3u, k3v);
        rhs(u + h * k3u, v + h * k3v, k4u, k4v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
};

// Sign changes of u over (a, b]. An exact zero at b counts as reached.
int count_zeros(const ShootingSystem& sys, double length, int steps, double slope) {
    const double h = length / steps;
    double u = 0.0;
    double v = slope;
    int count = 0;
    bool positive = slope > 0.0;
    for (int i = 0; i < steps; ++i) {
        sys.step(u, v, h);
        if (u != 0.0 && (u > 0.0) != positive) {
            ++count;
            positive = u > 0.0;
        }
    }
    if (u == 0.0) ++count;
    return count;
}

double bisect_mode(double p, double length, int n, double tol, int steps,
                   const ShootOptions& opt) {
    const double p_conj = p / (p - 1.0);
    auto zeros_at = [&](double lambda) {
        return count_zeros(ShootingSystem{p, p_conj, lambda}, length, steps, opt.initial_slope);
    };

    const double base = std::pow(n * std::numbers::pi / length, p) * std::max(1.0, p - 1.0);
    double lo = 1e-3 * base;
    double hi = 10.0 * base;
    int expansions = 0;
    while (zeros_at(lo) >= n) {
        if (++expansions > opt.max_bracket_expansions) {
            throw BracketNotFound("could not find lambda below mode " + std::to_string(n));
        }
        hi = lo;
        lo *= 0.1;
    }
    while (zeros_at(hi) < n) {
        if (++expansions > opt.max_bracket_expansions) {
            throw BracketNotFound("could not find lambda above mode " + std::to_string(n));
        }
        lo = hi;
        hi *= 10.0;
    }

    for (int it = 0; it < opt.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (zeros_at(mid) >= n) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo <= tol * hi) return 0.5 * (lo + hi);
    }
    throw NonConvergence("eigenvalue bisection did not reach tolerance");
}

std::vector<double> sample_mode(double p, double lambda, double length, int steps, double slope,
                                int& interior_zeros) {
    const ShootingSystem sys{p, p / (p - 1.0), lambda};
    const double h = length / steps;
    std::vector<double> u(static_cast<std::size_t>(steps) + 1, 0.0);
    double uu = 0.0;
    double vv = slope;
    for (int i = 0; i < steps; ++i) {
        sys.step(uu, vv, h);
        u[static_cast<std::size_t>(i) + 1] = uu;
    }
    // The endpoint lands on the last zero only up to the bisection tolerance.
    u.back() = 0.0;

    interior_zeros = 0;
    bool positive = slope > 0.0;
    for (int i = 1; i < steps; ++i) {
        const double x = u[static_cast<std::size_t>(i)];
        if (x != 0.0 && (x > 0.0) != positive) {
            ++interior_zeros;
            positive = x > 0.0;
        }
    }

    double norm = 0.0;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) norm += std::pow(std::abs(u[i]), p);
    norm *= h;
    const double scale = std::pow(norm, -1.0 / p);
    for (double& x : u) x *= scale;
    return u;
}

}  // namespace

Interval1D Interval1D::make(double a, double b) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidParameter("interval requires finite a < b");
    }
    return Interval1D{a, b};
}

double pi_p(double p) {
    require_p(p);
    return 2.0 * std::numbers::pi / (p * std::sin(std::numbers::pi / p));
}

double closed_form_eigenvalue_1d(double p, int n, double length) {
    require_p(p);
    return (p - 1.0) * std::pow(n * pi_p(p) / length, p);
}

Mode1D shoot_eigenvalue(const Interval1D& interval, double p, int n, double tol,
                        const ShootOptions& options) {
    require_p(p);
    if (n < 1) throw InvalidParameter("mode index must be >= 1");
    if (!(tol > 0.0)) throw InvalidParameter("tolerance must be positive");
    if (!(interval.b > interval.a)) throw InvalidParameter("interval requires a < b");
    if (options.initial_slope == 0.0) throw InvalidParameter("initial slope must be nonzero");

    const double length = interval.length();
    int steps = std::max(options.initial_steps, 4096);
    double lambda = bisect_mode(p, length, n, tol, steps, options);
    for (;;) {
        if (2 * steps > options.max_steps) {
            throw NonConvergence("step doubling did not converge for mode " + std::to_string(n));
        }
        const double refined = bisect_mode(p, length, n, tol, 2 * steps, options);
        steps *= 2;
        const bool done = std::abs(refined - lambda) < tol * refined;
        lambda = refined;
        if (done) break;
    }

    Mode1D mode;
    mode.n = n;
    mode.lambda = lambda;
    mode.steps = steps;
    mode.u = sample_mode(p, lambda, length, steps, options.initial_slope, mode.zeros);
    return mode;
}

double ratio_1d(double p) {
    require_p(p);
    return std::pow(2.0, p);
}

AuditEntry hardy_check_1d(std::span<const double> samples, double length, double p) {
    require_p(p);
    if (samples.size() < 3) throw InvalidInput("need at least three samples");
    if (!(length > 0.0)) throw InvalidInput("length must be positive");
    double scale = 0.0;
    for (double x : samples) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) throw InvalidInput("field is identically zero");
    if (std::abs(samples.front()) > 1e-12 * scale || std::abs(samples.back()) > 1e-12 * scale) {
        throw InvalidInput("field must vanish at both endpoints");
    }

    const std::size_t cells = samples.size() - 1;
    const double h = length / static_cast<double>(cells);
    double weighted = 0.0;
    double energy = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double x_mid = (static_cast<double>(i) + 0.5) * h;
        const double u_mid = 0.5 * (samples[i] + samples[i + 1]);
        weighted += std::pow(std::abs(u_mid / x_mid), p);
        energy += std::pow(std::abs((samples[i + 1] - samples[i]) / h), p);
    }
    const double hardy = std::pow(p / (p - 1.0), p);
    return make_entry("hardy_1d", weighted * h, hardy * energy * h, 0.0);
}

}  // namespace pgap
