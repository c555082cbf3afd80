#include "doctest.h"

#include "heatpot/boundary.hpp"
#include "heatpot/grid.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

using namespace heatpot;

TEST_CASE("uniform grid nodes") {
    auto g = TimeGrid::uniform(1.0, 4);
    REQUIRE(g.size() == 5);
    std::vector<double> expect{0.0, 0.25, 0.5, 0.75, 1.0};
    for (std::size_t k = 0; k < 5; ++k)
        CHECK(g[k] == doctest::Approx(expect[k]).epsilon(1e-15));

    auto g2 = TimeGrid::uniform(2.0, 1);
    CHECK(g2.size() == 2);
    CHECK(g2[0] == 0.0);
    CHECK(g2[1] == 2.0);

    CHECK_THROWS_AS(TimeGrid::uniform(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::uniform(1.0, 0), std::invalid_argument);
}

TEST_CASE("graded grid nodes") {
    auto g = TimeGrid::graded(1.0, 2, 2.0);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g[2] == doctest::Approx(1.0).epsilon(1e-15));

    auto u = TimeGrid::uniform(1.0, 4);
    auto g1 = TimeGrid::graded(1.0, 4, 1.0);
    for (std::size_t k = 0; k < u.size(); ++k)
        CHECK(g1[k] == doctest::Approx(u[k]).epsilon(1e-15));

    CHECK_THROWS_AS(TimeGrid::graded(1.0, 3, 0.5), std::invalid_argument);
}

TEST_CASE("increments sum to the horizon") {
    for (double gamma : {1.0, 1.5, 2.0, 3.0}) {
        auto g = TimeGrid::graded(3.7, 113, gamma);
        double sum = 0.0;
        for (std::size_t k = 1; k < g.size(); ++k)
            sum += g.delta(k, k - 1);
        CHECK(std::abs(sum - 3.7) / 3.7 < 1e-12);
    }
}

TEST_CASE("boundary curve evaluation") {
    auto flat = BoundaryCurve::flat(1.0);
    CHECK(flat.value(3.0) == 1.0);
    CHECK(flat.derivative(3.0) == 0.0);

    auto ep = BoundaryCurve::exponential_pair(1.0, 2.0);
    CHECK(ep.value(0.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(ep.derivative(0.0) == doctest::Approx(1.0).epsilon(1e-15));

    auto sin_b = BoundaryCurve::sinusoid(0.0, 0.2, 10.0);
    CHECK(sin_b.value(0.0) == doctest::Approx(0.0));
    CHECK(sin_b.derivative(0.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("tabulated boundary derivative converges at second order") {
    // Quadratic tabulation: the nonuniform central differences should be
    // exact up to roundoff; use a cubic to see the O(h^2) decay instead.
    auto poly = [](double t) { return 0.3 + 0.5 * t - 1.25 * t * t + 0.4 * t * t * t; };
    auto dpoly = [](double t) { return 0.5 - 2.5 * t + 1.2 * t * t; };

    auto max_err = [&](std::size_t n) {
        auto grid = std::make_shared<TimeGrid>(TimeGrid::uniform(2.0, n));
        std::vector<double> v(grid->size());
        for (std::size_t k = 0; k < grid->size(); ++k)
            v[k] = poly((*grid)[k]);
        auto curve = BoundaryCurve::tabulated(grid, v);
        double m = 0.0;
        for (std::size_t k = 0; k < grid->size(); ++k)
            m = std::max(m, std::abs(curve.derivative((*grid)[k]) - dpoly((*grid)[k])));
        return m;
    };

    double coarse = max_err(40), fine = max_err(160);
    CHECK(fine * 3.5 <= coarse);  // quadrupling N must shrink the error >= 3.5x

    auto grid = std::make_shared<TimeGrid>(TimeGrid::uniform(1.0, 10));
    std::vector<double> v(grid->size(), 0.0);
    auto curve = BoundaryCurve::tabulated(grid, v);
    CHECK_THROWS_AS(curve.value(1.5), std::out_of_range);
}
