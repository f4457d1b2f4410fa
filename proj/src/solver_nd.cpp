#include "pgap/solver_nd.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "dirichlet_laplacian.hpp"

namespace pgap {

namespace {

void require_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidParameter("p must be a finite number > 1");
}

bool normalize(std::vector<double>& u, double p, double vol) {
    double s = 0.0;
    for (double x : u) s += std::pow(std::abs(x), p);
    if (!(s > 0.0) || !std::isfinite(s)) return false;
    const double scale = std::pow(s * vol, -1.0 / p);
    for (double& x : u) x *= scale;
    return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct DescentState {
    ScalarField u;
    double rayleigh = 0.0;
    std::vector<double> residual;   // strong residual (A(u) - R B(u)) / V
    std::vector<double> direction;  // -(L^{-1} residual) / gradient energy ratio
    double relative_residual = 0.0;
};

DescentState evaluate(ScalarField u, double p, const detail::DirichletLaplacianInverse& inv) {
    DescentState s;
    const auto parts = rayleigh_parts(u, p, true);
    if (!(parts.denominator > 0.0)) throw InvalidInput("Rayleigh quotient of a zero field");
    const double vol = u.domain.node_volume();
    s.rayleigh = parts.numerator / parts.denominator;
    s.residual.resize(u.values.size());
    std::vector<double> load(u.values.size());
    for (std::size_t k = 0; k < load.size(); ++k) {
        s.residual[k] = (parts.stiffness_action[k] - s.rayleigh * parts.mass_action[k]) / vol;
        load[k] = s.rayleigh * parts.mass_action[k] / vol;
    }
    // sum |grad u|^p / sum |grad u|^2 puts the preconditioner on the scale of -Delta_p.
    const double dirichlet = rayleigh_parts(u, 2.0, false).numerator;
    const double scale = dirichlet > 0.0 ? parts.numerator / dirichlet : 1.0;

    s.direction = inv.apply(s.residual);
    const double res_norm = dot(s.residual, s.direction);
    for (double& x : s.direction) x *= -1.0 / scale;
    const double load_norm = inv.dual_norm_squared(load);
    s.relative_residual = load_norm > 0.0 ? std::sqrt(std::max(res_norm, 0.0) / load_norm) : 0.0;
    s.u = std::move(u);
    return s;
}

Eigenpair to_eigenpair(const DescentState& s, int iterations) {
    return Eigenpair{s.rayleigh, s.u, s.relative_residual, iterations};
}

}  // namespace

Eigenpair principal_eigenpair(const MeshedDomain& domain, double p, double tol, int max_iter,
                              const DescentOptions& options) {
    require_p(p);
    if (!(tol > 0.0)) throw InvalidParameter("tolerance must be positive");
    if (max_iter < 1) throw InvalidParameter("max_iter must be >= 1");
    const double vol = domain.node_volume();
    const int nd = domain.n_dim();
    const detail::DirichletLaplacianInverse inv(domain);

    auto initial = ScalarField::sample(domain, [&](std::span<const double> x) {
        double v = 1.0;
        for (int i = 0; i < nd; ++i) {
            v *= std::sin(std::numbers::pi * (x[static_cast<std::size_t>(i)] - domain.low(i)) / domain.length(i));
        }
        return v;
    });
    normalize(initial.values, p, vol);
    DescentState state = evaluate(std::move(initial), p, inv);

    std::deque<double> history{state.rayleigh};
    int iter = 0;
    bool converged = false;
    while (iter < max_iter) {
        const std::vector<double>& dir = state.direction;
        // Directional derivative of R along dir; dR/du_k = (p / D) V residual_k with D = 1.
        const double slope = p * vol * dot(state.residual, dir);
        if (!(slope < 0.0)) {
            converged = true;
            break;
        }

        bool accepted = false;
        for (double step = 1.0; step >= options.min_step; step *= 0.5) {
            std::vector<double> trial = state.u.values;
            for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += step * dir[k];
            if (!normalize(trial, p, vol)) continue;
            ScalarField candidate(domain, std::move(trial));
            const auto parts = rayleigh_parts(candidate, p, false);
            const double value = parts.numerator / parts.denominator;
            if (value <= state.rayleigh + options.armijo * step * slope) {
                state = evaluate(std::move(candidate), p, inv);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No representable decrease left along the preconditioned direction.
            converged = true;
            break;
        }
        ++iter;
        if (options.observer) options.observer(iter, state.rayleigh);

        history.push_back(state.rayleigh);
        if (static_cast<int>(history.size()) > options.window + 1) history.pop_front();
        if (static_cast<int>(history.size()) == options.window + 1 &&
            std::abs(history.front() - history.back()) < tol * std::abs(history.back()) &&
            (options.residual_tol <= 0.0 || state.relative_residual <= options.residual_tol)) {
            converged = true;
            break;
        }
    }

    if (!converged) {
        throw EigenNonConvergence("principal eigenpair: " + std::to_string(max_iter) +
                                      " iterations without meeting tolerance",
                                  to_eigenpair(state, iter));
    }
    for (double x : state.u.values) {
        if (!(x > 0.0)) {
            throw InternalError("principal eigenfunction has a non-positive node");
        }
    }
    return to_eigenpair(state, iter);
}

double lambda1_exact_p2(const MeshedDomain& domain) {
    double s = 0.0;
    for (int i = 0; i < domain.n_dim(); ++i) s += 1.0 / (domain.length(i) * domain.length(i));
    return std::numbers::pi * std::numbers::pi * s;
}

double lambda2_exact_p2(const MeshedDomain& domain) {
    // Raising one index from 1 to 2 adds 3 pi^2 / L_i^2; the longest axis adds the least.
    double longest = 0.0;
    for (int i = 0; i < domain.n_dim(); ++i) longest = std::max(longest, domain.length(i));
    return lambda1_exact_p2(domain) + 3.0 * std::numbers::pi * std::numbers::pi / (longest * longest);
}

SplitRatios split_ratios(const ScalarField& phi, double p, int axis, double delta) {
    require_p(p);
    const MeshedDomain& d = phi.domain;
    if (axis < 0 || axis >= d.n_dim()) throw InvalidParameter("axis out of range");
    double mass_in = 0.0, mass_out = 0.0, moment_in = 0.0, moment_out = 0.0;
    for (std::size_t k = 0; k < phi.values.size(); ++k) {
        const double x = d.coordinate(axis, d.unflatten(k)[static_cast<std::size_t>(axis)]);
        const double m = std::pow(std::abs(phi.values[k]), p);
        const double w = m * std::pow(std::abs(x - delta), p);
        if (x < delta) {
            mass_in += m;
            moment_in += w;
        } else {
            mass_out += m;
            moment_out += w;
        }
    }
    SplitRatios r;
    r.inside = moment_in > 0.0 ? mass_in / moment_in : INFINITY;
    r.outside = moment_out > 0.0 ? mass_out / moment_out : INFINITY;
    r.whole = (mass_in + mass_out) / (moment_in + moment_out);
    return r;
}

double find_delta_star(const ScalarField& phi, double p, int axis) {
    const MeshedDomain& d = phi.domain;
    if (axis < 0 || axis >= d.n_dim()) throw InvalidParameter("axis out of range");
    const int n = d.resolution(axis);
    if (n < 2) throw NumericalDegeneracy("need at least two node layers to split");
    const double h = d.spacing(axis);
    auto balance = [&](double delta) {
        const auto r = split_ratios(phi, p, axis, delta);
        return r.inside - r.outside;
    };
    // Just past the first layer F_omega blows up; just before the last, F_rest does.
    double lo = d.coordinate(axis, 0) + 1e-3 * h;
    double hi = d.coordinate(axis, n - 1) - 1e-3 * h;
    const double f_lo = balance(lo);
    const double f_hi = balance(hi);
    if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
        throw NumericalDegeneracy("split balance does not change sign along axis " +
                                  std::to_string(axis));
    }
    const double width_tol = 1e-12 * d.length(axis);
    while (hi - lo > width_tol) {
        const double mid = 0.5 * (lo + hi);
        const double f = balance(mid);
        if (f > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string_view to_string(SplitEndpoint e) noexcept {
    return e == SplitEndpoint::Inside ? "alpha" : "beta";
}

double SplitUpperBound::mixed_quotient(double t) const {
    return (numerator_inside * t + numerator_outside * (1.0 - t)) /
           (denominator_inside * t + denominator_outside * (1.0 - t));
}

SplitUpperBound lambda2_upper_via_splitting(const MeshedDomain& domain, double p,
                                            const Eigenpair& eig1, int axis) {
    require_p(p);
    if (!(eig1.phi.domain == domain)) throw InvalidInput("eigenpair lives on a different domain");
    const double delta = find_delta_star(eig1.phi, p, axis);

    std::vector<double> inside(domain.size(), 0.0);
    std::vector<double> outside(domain.size(), 0.0);
    for (std::size_t k = 0; k < domain.size(); ++k) {
        const double x = domain.coordinate(axis, domain.unflatten(k)[static_cast<std::size_t>(axis)]);
        const double v = eig1.phi.values[k] * (x - delta);
        (x < delta ? inside : outside)[k] = v;
    }
    const auto in_parts = rayleigh_parts(ScalarField(domain, std::move(inside)), p, false);
    const auto out_parts = rayleigh_parts(ScalarField(domain, std::move(outside)), p, false);
    if (!(in_parts.denominator > 0.0) || !(out_parts.denominator > 0.0)) {
        throw NumericalDegeneracy("split produced an empty side");
    }

    SplitUpperBound out;
    out.delta = delta;
    out.axis = axis;
    out.numerator_inside = in_parts.numerator;
    out.denominator_inside = in_parts.denominator;
    out.numerator_outside = out_parts.numerator;
    out.denominator_outside = out_parts.denominator;
    const double r_in = in_parts.numerator / in_parts.denominator;
    const double r_out = out_parts.numerator / out_parts.denominator;
    out.endpoint = r_in >= r_out ? SplitEndpoint::Inside : SplitEndpoint::Outside;
    out.value = std::max(r_in, r_out);
    return out;
}

void write_eigenpair(std::ostream& out, const Eigenpair& eig, double p) {
    std::ostringstream meta;
    meta << std::setprecision(std::numeric_limits<double>::max_digits10);
    meta << "p=" << p << " lambda=" << eig.lambda << " residual=" << eig.residual
         << " iterations=" << eig.iterations << '\n';
    out << meta.str();
    write_field(out, eig.phi);
}

Eigenpair read_eigenpair(std::istream& in, double* p_out) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("empty eigenpair snapshot");
    std::istringstream ss(line);
    std::string token;
    Eigenpair eig;
    double p = 0.0;
    int seen = 0;
    while (ss >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw InvalidInput("bad eigenpair metadata: " + line);
        const std::string key = token.substr(0, eq);
        const std::string val = token.substr(eq + 1);
        try {
            if (key == "p") p = std::stod(val), ++seen;
            else if (key == "lambda") eig.lambda = std::stod(val), ++seen;
            else if (key == "residual") eig.residual = std::stod(val), ++seen;
            else if (key == "iterations") eig.iterations = std::stoi(val), ++seen;
        } catch (const std::exception&) {
            throw InvalidInput("bad eigenpair metadata value: " + token);
        }
    }
    if (seen != 4) throw InvalidInput("eigenpair metadata incomplete: " + line);
    eig.phi = read_field(in);
    if (p_out) *p_out = p;
    return eig;
}

}  // namespace pgap
