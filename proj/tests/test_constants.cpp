#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "exttype/constants.hpp"
#include "exttype/scmap.hpp"
#include "oracles.hpp"

TEST_CASE("defect: spot values") {
    // both sides in closed form at c = 1: log(1+sqrt 2) - sqrt 2
    CHECK(std::abs(exttype::eval_defect(1.0) - (-0.532839975353552)) < 1e-12);
    // near the root the defect is tiny
    CHECK(std::abs(exttype::eval_defect(1.508879)) < 1e-5);
    // large c: log(2c) keeps growing while the right side tends to 1
    CHECK(exttype::eval_defect(10.0) > 0.0);
}

TEST_CASE("defect: rejects nonpositive input") {
    CHECK_THROWS_AS(exttype::eval_defect(0.0), std::invalid_argument);
    CHECK_THROWS_AS(exttype::eval_defect(-1.0), std::invalid_argument);
}

TEST_CASE("defect: strictly increasing on (0.1, 10)") {
    double prev = exttype::eval_defect(0.1);
    for (int i = 1; i <= 200; ++i) {
        const double c = 0.1 * std::pow(100.0, static_cast<double>(i) / 200.0);
        const double cur = exttype::eval_defect(c);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("solve: the extremal trio") {
    const exttype::ExtremalConstants ec = exttype::solve_extremal_constant(1e-8);
    CHECK(std::abs(ec.c - 1.508879) < 1e-6);
    CHECK(std::abs(ec.c - oracle::kC) < 1e-8);
    CHECK(std::abs(ec.k - 1.810170) < 1e-6);
    CHECK(std::abs(ec.k - std::sqrt(ec.c * ec.c + 1.0)) < 1e-12);
    CHECK(std::abs(ec.b - 2.370142) < 1e-5);
    CHECK(std::abs(ec.b - std::numbers::pi * ec.c / 2.0) < 1e-12);
    CHECK(std::abs(exttype::eval_defect(ec.c)) <= 1e-8);
    CHECK(ec.tol <= 1e-8);
}

TEST_CASE("solve: rejects bad tolerance") {
    CHECK_THROWS_AS(exttype::solve_extremal_constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS(exttype::solve_extremal_constant(-1e-8), std::invalid_argument);
}

TEST_CASE("classical bounds bracket the extremal constant") {
    const exttype::BoundTriple bt = exttype::classical_bounds();
    CHECK(std::abs(bt.sine_density - 0.636620) < 1e-6);
    // 2e/pi = 1.73051195886..., quoted as 1.7305 at four decimals
    CHECK(std::abs(bt.jensen - 1.7305) < 5e-5);
    CHECK(std::abs(bt.sine_density - oracle::kSineDensity) < 1e-12);
    CHECK(std::abs(bt.jensen - oracle::kJensenBound) < 1e-12);
    CHECK(bt.sine_density < bt.extremal);
    CHECK(bt.extremal < bt.jensen);
}

TEST_CASE("cross-route agreement with the map parameter problem") {
    const exttype::ExtremalConstants ec = exttype::solve_extremal_constant(1e-10);
    const double k_star = exttype::solve_parameter(1e-9);
    CHECK(std::abs(std::sqrt(k_star * k_star - 1.0) - ec.c) < 1e-6);
}
