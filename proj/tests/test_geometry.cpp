#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "grushin/geometry.hpp"
#include "grushin/rng.hpp"

using namespace grushin;

namespace {

Point random_point(CounterRng& rng, int m, int k, double lo = -3.0, double hi = 3.0) {
    Point p;
    for (int i = 0; i < m; ++i) p.x.push_back(rng.uniform(lo, hi));
    for (int j = 0; j < k; ++j) p.y.push_back(rng.uniform(lo, hi));
    return p;
}

}  // namespace

TEST_CASE("homogeneous dimension Q = m + (1+gamma)k") {
    CHECK(GrushinParams::create(1, 1, 1.0).Q == doctest::Approx(3.0));
    CHECK(GrushinParams::create(2, 2, 1.0).Q == doctest::Approx(6.0));
    CHECK(GrushinParams::create(2, 1, 2.0).Q == doctest::Approx(5.0));
    CHECK(GrushinParams::create(2, 1, 0.5).Q == doctest::Approx(3.5));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(GrushinParams::create(0, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GrushinParams::create(1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GrushinParams::create(1, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GrushinParams::create(1, 1, -1.0), std::invalid_argument);
}

TEST_CASE("gauge reduces to |x| on the x-axis") {
    const auto params = GrushinParams::create(2, 1, 1.5);
    Point p{{3.0, 4.0}, {0.0}};
    CHECK(gauge(p, params) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("gauge on the y-axis follows the anisotropic scaling") {
    // gamma = 1, so rho((0, y)) = (4 y^2)^{1/4} = sqrt(2|y|).
    const auto params = GrushinParams::create(1, 1, 1.0);
    Point p{{0.0}, {2.0}};
    CHECK(gauge(p, params) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(gauge_reduced(0.0, 2.0, params) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gauge is homogeneous of degree one under the anisotropic dilations") {
    const auto params = GrushinParams::create(2, 2, 1.5);
    CounterRng rng(7, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Point p = random_point(rng, params.m, params.k);
        const double lambda = rng.uniform(0.2, 5.0);
        const double lhs = gauge(dilate(p, lambda, params), params);
        CHECK(lhs == doctest::Approx(lambda * gauge(p, params)).epsilon(1e-12));
    }
}

TEST_CASE("gradient norm of the gauge: closed form and invariances") {
    const auto params = GrushinParams::create(2, 1, 2.0);
    CounterRng rng(11, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Point p = random_point(rng, params.m, params.k);
        const double rho = gauge(p, params);
        if (rho < 1e-6) continue;
        const double r = norm2(p.x);
        const double w = gauge_gradient_norm(p, params);
        CHECK(w == doctest::Approx(std::pow(r / rho, params.gamma)).epsilon(1e-12));
        CHECK(w <= 1.0 + 1e-12);
        // invariant along dilation orbits
        const double w2 = gauge_gradient_norm(dilate(p, 3.0, params), params);
        CHECK(w2 == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("gradient norm equals one away from the degenerate set when y = 0") {
    const auto params = GrushinParams::create(2, 1, 1.0);
    Point p{{1.0, -2.0}, {0.0}};
    CHECK(gauge_gradient_norm(p, params) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gradient norm vanishes on the degenerate set and throws at the origin") {
    const auto params = GrushinParams::create(1, 1, 1.0);
    Point on_axis{{0.0}, {1.0}};
    CHECK(gauge_gradient_norm(on_axis, params) == 0.0);
    Point origin{{0.0}, {0.0}};
    CHECK_THROWS_AS(gauge_gradient_norm(origin, params), std::domain_error);
    CHECK_THROWS_AS(gauge_gradient(origin, params), std::domain_error);
}

TEST_CASE("frame gradient of the gauge has the closed-form norm") {
    const auto params = GrushinParams::create(2, 2, 1.5);
    CounterRng rng(13, 0);
    for (int trial = 0; trial < 30; ++trial) {
        Point p = random_point(rng, params.m, params.k);
        if (gauge(p, params) < 1e-6) continue;
        const auto g = gauge_gradient(p, params);
        CHECK(g.size() == static_cast<size_t>(params.m + params.k));
        CHECK(norm2(g) == doctest::Approx(gauge_gradient_norm(p, params)).epsilon(1e-10));
    }
}

TEST_CASE("rho-ball membership agrees with the gauge") {
    const auto params = GrushinParams::create(1, 1, 1.0);
    Point p{{0.5}, {0.1}};
    const double rho = gauge(p, params);
    CHECK(in_rho_ball(p, rho * 1.01, params));
    CHECK_FALSE(in_rho_ball(p, rho * 0.99, params));
    CHECK_THROWS_AS(in_rho_ball(p, 0.0, params), std::invalid_argument);
}

TEST_CASE("dilate validates lambda") {
    const auto params = GrushinParams::create(1, 1, 1.0);
    Point p{{1.0}, {1.0}};
    CHECK_THROWS_AS(dilate(p, 0.0, params), std::invalid_argument);
}
