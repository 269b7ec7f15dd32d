#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "weakkam/errors.hpp"
#include "weakkam/quad.hpp"

using namespace weakkam;

TEST_CASE("polynomials are integrated exactly") {
    // 15-point Kronrod is exact up to degree 22, so no panel is ever split.
    const auto r = integrate_adaptive([](double x) { return 7 * std::pow(x, 6) - 3 * x * x + 1.0; }, -1.0, 2.0);
    const double exact = (std::pow(2.0, 7) + 1.0) - (8.0 + 1.0) + 3.0;
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
    CHECK(r.subdivisions == 0);
}

TEST_CASE("smooth integrals against closed forms") {
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 3.0) == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return 1.0 / (1.0 + 1e4 * x * x); }, -1.0, 1.0) ==
          doctest::Approx(2.0 * std::atan(100.0) / 100.0).epsilon(1e-10));
}

TEST_CASE("square-root endpoint singularities") {
    CHECK(integrate_endpoint_singular([](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0) ==
          doctest::Approx(oracle::kPi).epsilon(1e-10));
    CHECK(integrate_from_singular([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0) == doctest::Approx(4.0).epsilon(1e-10));
    // Reversed direction gives the oriented integral.
    CHECK(integrate_from_singular([](double x) { return 1.0 / std::sqrt(4.0 - x); }, 4.0, 0.0) ==
          doctest::Approx(-4.0).epsilon(1e-10));
}

TEST_CASE("partitioned integral with kinks at the breakpoints") {
    const std::vector<double> brk = {0.5, 1.5};
    const double v = integrate_partitioned([](double x) { return std::sqrt(std::abs(x - 0.5)) + std::abs(x - 1.5); }, 0.0, 2.0, brk);
    const double exact = (2.0 / 3.0) * (std::pow(0.5, 1.5) + std::pow(1.5, 1.5)) + 0.5 * (1.5 * 1.5 + 0.25);
    CHECK(v == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("circle integrals") {
    CHECK(integrate_circle([](double x) { return std::cos(x) * std::cos(x); }) == doctest::Approx(oracle::kPi).epsilon(1e-12));
    const std::vector<double> brk = {oracle::kPi};
    CHECK(integrate_circle([](double x) { return std::abs(std::cos(0.5 * x)); }, brk) == doctest::Approx(4.0).epsilon(1e-11));
    // Breakpoints outside [0, 2pi) are reduced.
    const std::vector<double> shifted = {oracle::kPi - 4.0 * oracle::kPi};
    CHECK(integrate_circle([](double x) { return std::abs(std::cos(0.5 * x)); }, shifted) == doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("a dense oracle agrees with the adaptive driver") {
    auto g = [](double x) { return std::exp(std::sin(3.0 * x)) / (1.2 + std::cos(x)); };
    CHECK(integrate_circle(g) == doctest::Approx(oracle::circle_midpoint(g)).epsilon(1e-10));
}

TEST_CASE("budget exhaustion raises AccuracyError with the best estimate") {
    QuadConfig cfg;
    cfg.max_subdivisions = 3;
    try {
        integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, cfg);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("non-finite integrand is a domain error") {
    CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0), DomainError);
}

TEST_CASE("config validation") {
    QuadConfig q;
    q.rel_tol = 0.0;
    CHECK_THROWS_AS(q.validate(), DomainError);
    QuadConfig t = QuadConfig{}.tightened(1e-13, 1e-20);
    CHECK(t.rel_tol == 1e-13);
    CHECK(t.abs_tol == 1e-20);
    CHECK(QuadConfig{}.tightened(1e-3, 1e-3).rel_tol == 1e-10);
}

TEST_CASE("invert_monotone") {
    const double x = invert_monotone([](double v) { return v * v * v; }, 8.0, 0.0, 10.0);
    CHECK(x == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(invert_monotone([](double v) { return v; }, 20.0, 0.0, 10.0), BracketError);
    CHECK_THROWS_AS(invert_monotone([](double v) { return v; }, -1.0, 0.0, 10.0), BracketError);
}

TEST_CASE("property: invert_monotone residual bound and bracket containment") {
    for (double target : {-3.0, -0.1, 0.0, 0.7, 5.0, 40.0}) {
        auto F = [](double v) { return v + 0.3 * std::sin(v) + std::exp(0.1 * v); };
        const double x = invert_monotone(F, target, -20.0, 30.0);
        CHECK(std::abs(F(x) - target) <= 1e-12 * std::max(1.0, std::abs(target)));
        CHECK(x >= -20.0);
        CHECK(x <= 30.0);
    }
}
