#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "pgap/errors.hpp"
#include "pgap/grid.hpp"

using namespace pgap;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField random_field(const MeshedDomain& d, std::mt19937& rng, bool positive) {
    std::uniform_real_distribution<double> dist(positive ? 0.2 : -1.0, 1.0);
    std::vector<double> v(d.size());
    for (double& x : v) x = dist(rng);
    return ScalarField(d, std::move(v));
}

double central_difference(ScalarField f, double p, std::size_t k, double step) {
    const double x = f.values[k];
    f.values[k] = x + step;
    const double plus = rayleigh(f, p);
    f.values[k] = x - step;
    const double minus = rayleigh(f, p);
    return (plus - minus) / (2.0 * step);
}

}  // namespace

TEST_CASE("single interior node hand computation") {
    const std::array<std::array<double, 2>, 1> ext{{{0.0, 1.0}}};
    const std::array<int, 1> res{1};
    const auto d = MeshedDomain::make(ext, res);
    CHECK(d.spacing(0) == 0.5);
    const ScalarField f(d, {1.0});
    CHECK(rayleigh(f, 2.0) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(rayleigh(f, 3.0) == doctest::Approx(16.0).epsilon(1e-15));
    // (2 / h^2)(1 - cos(pi h)) at h = 1/2
    CHECK(rayleigh(f, 2.0) == doctest::Approx(8.0 * (1.0 - std::cos(kPi / 2.0))));
}

TEST_CASE("p = 2 quotient of a discrete sine is the discrete eigenvalue") {
    for (int n : {7, 31}) {
        const auto d = MeshedDomain::unit_box(2, n);
        const auto f = ScalarField::sample(d, [](std::span<const double> x) {
            return std::sin(kPi * x[0]) * std::sin(kPi * x[1]);
        });
        const double h = d.spacing(0);
        const double mu = 2.0 * (2.0 / (h * h)) * (1.0 - std::cos(kPi * h));
        CHECK(rayleigh(f, 2.0) == doctest::Approx(mu).epsilon(1e-12));
    }
}

TEST_CASE("rayleigh is scale invariant") {
    std::mt19937 rng(3);
    for (int n_dim = 1; n_dim <= 3; ++n_dim) {
        const auto d = MeshedDomain::unit_box(n_dim, 6);
        const auto f = random_field(d, rng, false);
        for (double p : {1.3, 2.0, 3.0, 7.0}) {
            const double base = rayleigh(f, p);
            for (double c : {-3.0, 1e-4, 250.0}) {
                ScalarField g = f;
                for (double& x : g.values) x *= c;
                CHECK(rayleigh(g, p) == doctest::Approx(base).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("rayleigh gradient matches central differences") {
    std::mt19937 rng(5);
    for (double p : {1.5, 2.0, 3.0}) {
        for (int n_dim = 1; n_dim <= 3; ++n_dim) {
            const auto d = MeshedDomain::unit_box(n_dim, n_dim == 3 ? 4 : 6);
            const auto f = random_field(d, rng, p == 3.0);
            const auto g = rayleigh_gradient(f, p);
            REQUIRE(g.values.size() == f.values.size());
            double scale = 0.0;
            for (double x : g.values) scale = std::max(scale, std::abs(x));
            for (std::size_t k = 0; k < f.values.size(); ++k) {
                const double fd = central_difference(f, p, k, 1e-6);
                CAPTURE(p);
                CAPTURE(n_dim);
                CAPTURE(k);
                CHECK(std::abs(g.values[k] - fd) <= 1e-5 * scale);
            }
        }
    }
}

TEST_CASE("rayleigh gradient is orthogonal to the field") {
    // Degree-zero homogeneity: sum_k u_k dR/du_k = 0.
    std::mt19937 rng(9);
    const auto d = MeshedDomain::unit_box(2, 9);
    for (double p : {1.5, 2.0, 4.0}) {
        const auto f = random_field(d, rng, false);
        const auto g = rayleigh_gradient(f, p);
        double dot = 0.0;
        double norm = 0.0;
        for (std::size_t k = 0; k < f.values.size(); ++k) {
            dot += f.values[k] * g.values[k];
            norm += std::abs(f.values[k] * g.values[k]);
        }
        CHECK(std::abs(dot) <= 1e-12 * norm);
    }
}

TEST_CASE("degenerate and singular cells are handled") {
    const auto d = MeshedDomain::unit_box(2, 5);
    const ScalarField flat(d, std::vector<double>(d.size(), 1.0));
    for (double p : {1.5, 3.0}) {
        const auto g = rayleigh_gradient(flat, p);
        for (double x : g.values) CHECK(std::isfinite(x));
    }
}

TEST_CASE("zero field is rejected") {
    const auto d = MeshedDomain::unit_box(1, 4);
    const ScalarField zero(d, std::vector<double>(d.size(), 0.0));
    CHECK_THROWS_AS(rayleigh(zero, 2.0), InvalidInput);
    CHECK_THROWS_AS(rayleigh_gradient(zero, 2.0), InvalidInput);
}

TEST_CASE("weighted moment oracles") {
    SUBCASE("cosine on the centered interval") {
        const auto d = MeshedDomain::centered_unit_box(1, 2047);
        const auto f = ScalarField::sample(d, [](std::span<const double> x) {
            return std::sqrt(2.0) * std::cos(kPi * x[0]);
        });
        const std::array<double, 1> origin{0.0};
        const double m = weighted_moment(f, 2.0, origin, NormKind::L2, ExponentSign::Plus);
        CHECK(m == doctest::Approx(1.0 / 12.0 - 1.0 / (2.0 * kPi * kPi)).epsilon(1e-5));
    }
    SUBCASE("constant field converges to 1/3") {
        double prev_err = INFINITY;
        for (int n : {63, 255, 1023}) {
            const auto d = MeshedDomain::unit_box(1, n);
            const ScalarField one(d, std::vector<double>(d.size(), 1.0));
            const std::array<double, 1> origin{0.0};
            const double err = std::abs(
                weighted_moment(one, 2.0, origin, NormKind::L2, ExponentSign::Plus) - 1.0 / 3.0);
            CHECK(err < prev_err);
            prev_err = err;
        }
        CHECK(prev_err < 2e-3);
    }
    SUBCASE("minus moment of a constant in 3D") {
        const auto d = MeshedDomain::unit_box(3, 10);
        const ScalarField one(d, std::vector<double>(d.size(), 1.0));
        const auto origin = d.off_node(std::array<double, 3>{0.5, 0.5, 0.5});
        double brute = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            const auto x = d.position(k);
            double r2 = 0.0;
            for (int a = 0; a < 3; ++a) r2 += (x[a] - origin[a]) * (x[a] - origin[a]);
            brute += d.node_volume() / std::pow(r2, 0.75);
        }
        CHECK(weighted_moment(one, 1.5, origin, NormKind::L2, ExponentSign::Minus) ==
              doctest::Approx(brute).epsilon(1e-12));
    }
    SUBCASE("origin on a node is rejected for the minus moment") {
        const auto d = MeshedDomain::unit_box(2, 7);
        const ScalarField one(d, std::vector<double>(d.size(), 1.0));
        const std::array<double, 2> node{0.5, 0.5};
        CHECK(d.is_node(node));
        CHECK_THROWS_AS(weighted_moment(one, 2.0, node, NormKind::L2, ExponentSign::Minus),
                        InvalidInput);
        const std::array<double, 2> boundary{0.0, 0.25};
        CHECK(d.is_node(boundary));
        CHECK_THROWS_AS(weighted_moment(one, 2.0, boundary, NormKind::Lp, ExponentSign::Minus),
                        InvalidInput);
        CHECK_NOTHROW(weighted_moment(one, 2.0, node, NormKind::L2, ExponentSign::Plus));
        const auto shifted = d.off_node(node);
        CHECK_FALSE(d.is_node(std::span<const double>(shifted.data(), 2)));
    }
}

TEST_CASE("norm comparisons on random points") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int n : {2, 3}) {
        for (int i = 0; i < 100; ++i) {
            std::array<double, 3> x{};
            for (int a = 0; a < n; ++a) x[a] = dist(rng);
            const std::span<const double> xs(x.data(), n);
            const double l2 = point_norm(xs, NormKind::L2, 2.0);
            for (double p : {1.2, 1.5, 2.0}) CHECK(point_norm(xs, NormKind::Lp, p) >= l2 * (1 - 1e-14));
            for (double p : {2.0, 3.0, 5.0}) {
                CHECK(point_norm(xs, NormKind::Lp, p) >=
                      std::pow(n, -(p - 2.0) / (2.0 * p)) * l2 * (1 - 1e-14));
            }
        }
    }
}

TEST_CASE("refinement order for the sampled sine at p = 2") {
    std::vector<double> errors;
    for (int cells : {32, 64, 128}) {
        const auto d = MeshedDomain::unit_box(1, cells - 1);
        const auto f = ScalarField::sample(d, [](std::span<const double> x) {
            return std::sin(kPi * x[0]);
        });
        errors.push_back(std::abs(rayleigh(f, 2.0) - kPi * kPi));
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double order = std::log2(errors[i] / errors[i + 1]);
        CAPTURE(order);
        CHECK(order >= 1.8);
    }
}

TEST_CASE("domain construction and indexing") {
    const std::array<std::array<double, 2>, 2> ext{{{-1.0, 1.0}, {0.0, 3.0}}};
    const std::array<int, 2> res{3, 5};
    const auto d = MeshedDomain::make(ext, res);
    CHECK(d.shape() == Shape::Rectangle);
    CHECK(to_string(d.shape()) == "RECTANGLE");
    CHECK(d.size() == 15);
    CHECK(d.spacing(0) == doctest::Approx(0.5));
    CHECK(d.spacing(1) == doctest::Approx(0.5));
    CHECK(d.node_volume() == doctest::Approx(0.25));
    const auto idx = d.unflatten(7);
    CHECK(idx[0] == 1);
    CHECK(idx[1] == 2);
    const auto pos = d.position(7);
    CHECK(pos[0] == doctest::Approx(0.0));
    CHECK(pos[1] == doctest::Approx(1.5));
    CHECK(d.center()[1] == doctest::Approx(1.5));
    CHECK(MeshedDomain::unit_box(3, 4).shape() == Shape::Box);
    CHECK(MeshedDomain::unit_box(1, 4).shape() == Shape::Interval);

    const std::array<std::array<double, 2>, 1> bad_ext{{{1.0, 1.0}}};
    const std::array<int, 1> one{4};
    CHECK_THROWS_AS(MeshedDomain::make(bad_ext, one), InvalidParameter);
    const std::array<int, 1> zero{0};
    const std::array<std::array<double, 2>, 1> good_ext{{{0.0, 1.0}}};
    CHECK_THROWS_AS(MeshedDomain::make(good_ext, zero), InvalidParameter);
    CHECK_THROWS_AS(MeshedDomain::unit_box(4, 3), InvalidParameter);
    CHECK_THROWS_AS(ScalarField(d, std::vector<double>(14, 1.0)), InvalidInput);
    CHECK_THROWS_AS(ScalarField(d, std::vector<double>(15, NAN)), InvalidInput);
}

TEST_CASE("snapshot round trip is exact") {
    std::mt19937 rng(17);
    for (int n_dim = 1; n_dim <= 3; ++n_dim) {
        const auto d = MeshedDomain::centered_unit_box(n_dim, 5);
        const auto f = random_field(d, rng, false);
        std::stringstream ss;
        write_field(ss, f);
        const auto back = read_field(ss);
        CHECK(back.domain == f.domain);
        CHECK(back.values == f.values);
    }
    std::stringstream bad("shape=RECTANGLE n_dim=2\n1\n");
    CHECK_THROWS_AS(read_field(bad), InvalidInput);
}
