#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "pgap/bounds.hpp"
#include "pgap/errors.hpp"
#include "pgap/solver1d.hpp"
#include "pgap/solver_nd.hpp"

using namespace pgap;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-8;

MeshedDomain interval(double lo, double hi, int n) {
    const std::array<std::array<double, 2>, 1> ext{{{lo, hi}}};
    const std::array<int, 1> res{n};
    return MeshedDomain::make(ext, res);
}

MeshedDomain rectangle(double lx, double ly, int nx, int ny) {
    const std::array<std::array<double, 2>, 2> ext{{{0.0, lx}, {0.0, ly}}};
    const std::array<int, 2> res{nx, ny};
    return MeshedDomain::make(ext, res);
}

// Enumeration oracle: second smallest pi^2 sum k_i^2 / L_i^2 over k_i in 1..10.
double second_eigenvalue_by_enumeration(std::span<const double> lengths) {
    std::vector<double> values;
    const int n = static_cast<int>(lengths.size());
    std::array<int, 3> k{1, 1, 1};
    while (true) {
        double v = 0.0;
        for (int a = 0; a < n; ++a) v += k[a] * k[a] / (lengths[a] * lengths[a]);
        values.push_back(kPi * kPi * v);
        int a = 0;
        while (a < n && ++k[a] > 10) k[a++] = 1;
        if (a == n) break;
    }
    std::sort(values.begin(), values.end());
    return values.at(1);
}

}  // namespace

TEST_CASE("principal eigenvalue at p = 2 matches the classical values") {
    const auto e1 = principal_eigenpair(MeshedDomain::unit_box(1, 256), 2.0, kTol, 20000);
    CHECK(e1.lambda == doctest::Approx(kPi * kPi).epsilon(0.01));
    const auto e2 = principal_eigenpair(MeshedDomain::unit_box(2, 128), 2.0, kTol, 20000);
    CHECK(e2.lambda == doctest::Approx(2.0 * kPi * kPi).epsilon(0.01));
    // The discrete problem is solved exactly: compare with the 5-point stencil eigenvalue.
    const double h = 1.0 / 129.0;
    CHECK(e2.lambda == doctest::Approx(2.0 * (2.0 / (h * h)) * (1.0 - std::cos(kPi * h))).epsilon(1e-6));
}

TEST_CASE("principal eigenvalue at p != 2 in 1D matches shooting") {
    for (double p : {1.5, 3.0}) {
        CAPTURE(p);
        const auto e = principal_eigenpair(MeshedDomain::unit_box(1, 256), p, kTol, 20000);
        const double oracle = shoot_eigenvalue(Interval1D::make(0.0, 1.0), p, 1, 1e-10).lambda;
        CHECK(e.lambda == doctest::Approx(oracle).epsilon(0.01));
    }
}

TEST_CASE("eigenfunction is positive and p-normalized") {
    for (double p : {1.5, 2.0, 3.0}) {
        for (int n_dim = 1; n_dim <= 3; ++n_dim) {
            CAPTURE(p);
            CAPTURE(n_dim);
            const int grid = n_dim == 3 ? 15 : 47;
            const auto e = principal_eigenpair(MeshedDomain::unit_box(n_dim, grid), p, kTol, 20000);
            CHECK(std::all_of(e.phi.values.begin(), e.phi.values.end(),
                              [](double v) { return v > 0.0; }));
            CHECK(lp_integral(e.phi, p) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(e.lambda == doctest::Approx(rayleigh(e.phi, p)).epsilon(1e-12));
            CHECK(e.iterations > 0);
        }
    }
}

TEST_CASE("residual target drives the first-order condition down") {
    DescentOptions opts;
    opts.residual_tol = 1e-7;
    for (double p : {1.5, 3.0}) {
        const auto e = principal_eigenpair(MeshedDomain::unit_box(2, 31), p, kTol, 20000, opts);
        CAPTURE(p);
        CHECK(e.residual <= 10.0 * kTol);
        // Relative nodal gradient of R is tiny at the minimizer.
        const auto g = rayleigh_gradient(e.phi, p);
        double gmax = 0.0;
        for (double v : g.values) gmax = std::max(gmax, std::abs(v));
        double phimax = 0.0;
        for (double v : e.phi.values) phimax = std::max(phimax, v);
        CHECK(gmax / (e.lambda * phimax) <= 1e-3);
    }
}

TEST_CASE("descent is monotone") {
    for (double p : {1.5, 2.0, 4.0}) {
        std::vector<double> history;
        DescentOptions opts;
        opts.observer = [&history](int, double r) { history.push_back(r); };
        (void)principal_eigenpair(MeshedDomain::unit_box(2, 31), p, kTol, 20000, opts);
        REQUIRE(history.size() >= 2);
        for (std::size_t i = 1; i < history.size(); ++i) CHECK(history[i] <= history[i - 1]);
    }
}

TEST_CASE("iteration cap raises with the best iterate") {
    try {
        (void)principal_eigenpair(MeshedDomain::unit_box(2, 63), 1.5, 1e-15, 3);
        FAIL("expected EigenNonConvergence");
    } catch (const EigenNonConvergence& e) {
        CHECK(e.best().iterations == 3);
        CHECK(e.best().lambda > 0.0);
        CHECK(e.best().phi.values.size() == 63u * 63u);
    }
    CHECK_THROWS_AS(principal_eigenpair(MeshedDomain::unit_box(1, 15), 1.0, kTol, 10),
                    InvalidParameter);
    CHECK_THROWS_AS(principal_eigenpair(MeshedDomain::unit_box(1, 15), 2.0, 0.0, 10),
                    InvalidParameter);
}

TEST_CASE("closed-form p = 2 eigenvalues") {
    CHECK(lambda2_exact_p2(MeshedDomain::unit_box(1, 7)) == doctest::Approx(4.0 * kPi * kPi));
    CHECK(lambda2_exact_p2(MeshedDomain::unit_box(2, 7)) == doctest::Approx(5.0 * kPi * kPi));
    CHECK(lambda1_exact_p2(MeshedDomain::unit_box(3, 7)) == doctest::Approx(3.0 * kPi * kPi));
    const std::array<std::array<double, 3>, 4> cases{{
        {2.0, 1.0, 0.0}, {3.0, 1.0, 0.0}, {1.0, 1.7, 0.0}, {2.0, 1.0, 1.5}}};
    for (const auto& c : cases) {
        const bool three = c[2] > 0.0;
        std::vector<double> lengths{c[0], c[1]};
        if (three) lengths.push_back(c[2]);
        std::vector<std::array<double, 2>> ext;
        for (double l : lengths) ext.push_back({0.0, l});
        const std::vector<int> res(lengths.size(), 5);
        const auto d = MeshedDomain::make(ext, res);
        CHECK(lambda2_exact_p2(d) == doctest::Approx(second_eigenvalue_by_enumeration(lengths)));
    }
}

TEST_CASE("balancing point by symmetry") {
    SUBCASE("unit interval") {
        for (double p : {1.5, 2.0, 3.0}) {
            const auto d = MeshedDomain::unit_box(1, 127);
            const auto e = principal_eigenpair(d, p, kTol, 20000);
            CHECK(std::abs(find_delta_star(e.phi, p, 0) - 0.5) <= d.spacing(0));
        }
    }
    SUBCASE("unit square, both axes") {
        const auto d = MeshedDomain::unit_box(2, 63);
        const auto e = principal_eigenpair(d, 2.0, kTol, 20000);
        for (int axis : {0, 1}) CHECK(std::abs(find_delta_star(e.phi, 2.0, axis) - 0.5) <= d.spacing(axis));
    }
    SUBCASE("extent (0, 2)") {
        const auto d = interval(0.0, 2.0, 127);
        const auto e = principal_eigenpair(d, 2.0, kTol, 20000);
        CHECK(std::abs(find_delta_star(e.phi, 2.0, 0) - 1.0) <= d.spacing(0));
    }
    SUBCASE("2 x 1 rectangle along the long axis") {
        const auto d = rectangle(2.0, 1.0, 63, 31);
        const auto e = principal_eigenpair(d, 2.0, kTol, 20000);
        CHECK(std::abs(find_delta_star(e.phi, 2.0, 0) - 1.0) <= d.spacing(0));
        CHECK(std::abs(find_delta_star(e.phi, 2.0, 1) - 0.5) <= d.spacing(1));
    }
}

TEST_CASE("split ratios are balanced at the balancing point") {
    const auto d = MeshedDomain::unit_box(2, 63);
    const auto e = principal_eigenpair(d, 3.0, kTol, 20000);
    const double delta = find_delta_star(e.phi, 3.0, 0);
    const auto r = split_ratios(e.phi, 3.0, 0, delta);
    CHECK(r.inside == doctest::Approx(r.outside).epsilon(1e-8));
    CHECK(r.whole > 0.0);
    const auto left = split_ratios(e.phi, 3.0, 0, 0.3);
    CHECK(left.inside > left.outside);
}

TEST_CASE("splitting estimate brackets the second eigenvalue at p = 2") {
    SUBCASE("interval") {
        const auto d = MeshedDomain::unit_box(1, 255);
        const auto e = principal_eigenpair(d, 2.0, kTol, 20000);
        const auto up = lambda2_upper_via_splitting(d, 2.0, e, 0);
        CHECK(up.value >= 4.0 * kPi * kPi * 0.99);
        CHECK(up.value <= ratio_bound(ProblemParams::make(2.0, 1)).best * e.lambda * 1.02);
    }
    SUBCASE("square") {
        const auto d = MeshedDomain::unit_box(2, 127);
        const auto e = principal_eigenpair(d, 2.0, kTol, 20000);
        const auto up = lambda2_upper_via_splitting(d, 2.0, e, 0);
        CHECK(up.value >= 5.0 * kPi * kPi * 0.99);
        CHECK(up.value / e.lambda <= 3.0 * 1.02);
    }
}

TEST_CASE("endpoint maximization equals a scan of the mixed quotient") {
    for (double p : {1.5, 2.0, 3.0}) {
        const auto d = MeshedDomain::unit_box(2, 47);
        const auto e = principal_eigenpair(d, p, kTol, 20000);
        const auto up = lambda2_upper_via_splitting(d, p, e, 1);
        double scan = 0.0;
        for (int i = 0; i <= 100; ++i) scan = std::max(scan, up.mixed_quotient(i / 100.0));
        CHECK(std::abs(scan - up.value) <= 1e-9 * up.value);
        const double ends = std::max(up.mixed_quotient(0.0), up.mixed_quotient(1.0));
        CHECK(ends == doctest::Approx(up.value).epsilon(1e-12));
        CHECK(up.axis == 1);
        CHECK(to_string(up.endpoint) == (up.endpoint == SplitEndpoint::Inside ? "alpha" : "beta"));
    }
}

TEST_CASE("splitting estimate is an upper bound where the second eigenvalue is known") {
    const auto unit = Interval1D::make(0.0, 1.0);
    for (double p : {1.5, 2.0, 3.0}) {
        CAPTURE(p);
        const auto d = MeshedDomain::unit_box(1, 255);
        const auto e = principal_eigenpair(d, p, kTol, 20000);
        const auto up = lambda2_upper_via_splitting(d, p, e, 0);
        CHECK(up.value >= 0.99 * shoot_eigenvalue(unit, p, 2, 1e-10).lambda);
    }
    const auto rect = rectangle(2.0, 1.0, 95, 47);
    const auto e = principal_eigenpair(rect, 2.0, kTol, 20000);
    CHECK(lambda2_upper_via_splitting(rect, 2.0, e, 0).value >= 0.99 * lambda2_exact_p2(rect));
    CHECK(lambda2_upper_via_splitting(rect, 2.0, e, 1).value >= 0.99 * lambda2_exact_p2(rect));
}

TEST_CASE("balanced ratio dominates the computed gap") {
    for (double p : {2.0, 3.0}) {
        for (int n_dim : {1, 2}) {
            CAPTURE(p);
            CAPTURE(n_dim);
            const auto d = MeshedDomain::unit_box(n_dim, n_dim == 1 ? 255 : 63);
            const auto params = ProblemParams::make(p, n_dim);
            const auto c = constants_table(params);
            const auto e = principal_eigenpair(d, p, kTol, 20000);
            const auto up = lambda2_upper_via_splitting(d, p, e, 0);
            const auto r = split_ratios(e.phi, p, 0, up.delta);
            const double gap = up.value - c.k_hat * e.lambda;
            CHECK(std::pow(c.m_hat, p) * std::max(r.inside, r.outside) >= gap * (1.0 - 0.02));
        }
    }
}

TEST_CASE("axis invariance on the square") {
    for (double p : {1.5, 3.0}) {
        const auto d = MeshedDomain::unit_box(2, 63);
        const auto e = principal_eigenpair(d, p, kTol, 20000);
        const double a0 = lambda2_upper_via_splitting(d, p, e, 0).value;
        const double a1 = lambda2_upper_via_splitting(d, p, e, 1).value;
        CHECK(a0 == doctest::Approx(a1).epsilon(0.01));
    }
}

TEST_CASE("balancing fails without a sign change") {
    // A field concentrated near one end and zero elsewhere keeps F_omega above F_rest.
    const auto d = MeshedDomain::unit_box(1, 3);
    const ScalarField spike(d, {1.0, 0.0, 0.0});
    CHECK_THROWS_AS(find_delta_star(spike, 2.0, 0), NumericalDegeneracy);
    CHECK_THROWS_AS(find_delta_star(spike, 2.0, 1), InvalidParameter);
}

TEST_CASE("eigenpair snapshot round trip") {
    const auto e = principal_eigenpair(MeshedDomain::unit_box(2, 15), 3.0, kTol, 20000);
    std::stringstream ss;
    write_eigenpair(ss, e, 3.0);
    double p = 0.0;
    const auto back = read_eigenpair(ss, &p);
    CHECK(p == 3.0);
    CHECK(back.lambda == e.lambda);
    CHECK(back.residual == e.residual);
    CHECK(back.iterations == e.iterations);
    CHECK(back.phi.values == e.phi.values);
    CHECK(back.phi.domain == e.phi.domain);
}
