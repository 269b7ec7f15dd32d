#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "weakkam/errors.hpp"
#include "weakkam/weakkam.hpp"

using namespace weakkam;

namespace {

const double kSepAction = 4.0 / oracle::kPi;

// (1/2pi) int gamma_k(c, phi) by the dense midpoint rule on the test side.
double action_oracle(double k, double c, const Potential& p) {
    if (is_limit_order(k))
        return oracle::circle_midpoint([&](double x) { return std::sqrt(std::max(0.0, 2.0 * (c - p.eval(x)))); }) /
               oracle::kTwoPi;
    return oracle::circle_midpoint([&](double x) { return oracle::gamma_k(k, c, p.eval(x)); }, 200000) / oracle::kTwoPi;
}

}  // namespace

TEST_CASE("level curve matches the scalar Lambert oracle") {
    const auto p = Potential::pendulum();
    for (double k : {1.0, 100.0, 1e4, 1e6}) {
        const LevelCurve lv(p, k, 1.3);
        for (double phi = 0.0; phi < 6.3; phi += 0.7) {
            CHECK(lv.gamma(phi) == doctest::Approx(oracle::gamma_k(k, 1.3, p.eval(phi))).epsilon(1e-12));
            CHECK(lv.log_gamma(phi) == doctest::Approx(std::log(lv.gamma(phi))).epsilon(1e-12));
        }
    }
}

TEST_CASE("limit level curve") {
    const auto p = Potential::pendulum();
    const LevelCurve lv(p, kLimitOrder, 1.0);
    CHECK(lv.gamma(oracle::kPi) == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
    CHECK(lv.gamma(0.0) == doctest::Approx(2.0).epsilon(1e-14));
    const LevelCurve below(p, kLimitOrder, 0.0);
    CHECK(below.gamma(oracle::kPi) == 0.0);
}

TEST_CASE("separatrix action of the pendulum is 4/pi") {
    const auto p = Potential::pendulum();
    const double I = action_of_energy(kLimitOrder, 1.0, p);
    CHECK(I == doctest::Approx(kSepAction).epsilon(1e-12));
    CHECK(I == doctest::Approx(action_oracle(kLimitOrder, 1.0, p)).epsilon(1e-9));
    CHECK(energy_of_action(kLimitOrder, kSepAction, p) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("action map against the midpoint oracle") {
    const auto p = Potential::pendulum();
    for (double k : {10.0, 1e3}) {
        for (double c : {-0.5, 1.0, 2.5}) {
            CHECK(action_of_energy(k, c, p) == doctest::Approx(action_oracle(k, c, p)).epsilon(1e-9));
        }
    }
}

TEST_CASE("zero potential closed forms") {
    // gamma is the constant I, so c_k = I^2/2 + ln(I^2)/(2k) and H_k = I^2/2 + ln(2pi)/k.
    const auto p = Potential::zero();
    for (double k : {1.0, 100.0, 1e4}) {
        for (double I : {0.3, 2.0}) {
            const ActionContext ctx(p, k, I);
            CHECK(ctx.energy() == doctest::Approx(0.5 * I * I + std::log(I * I) / (2.0 * k)).epsilon(1e-12));
            CHECK(ctx.h_bar() == doctest::Approx(0.5 * I * I + std::log(oracle::kTwoPi) / k).epsilon(1e-12));
            CHECK(ctx.sigma(1.0) == doctest::Approx(1.0 / oracle::kTwoPi).epsilon(1e-12));
            CHECK(std::abs(ctx.u(2.0)) <= 1e-12);
        }
    }
}

TEST_CASE("energy_of_action round trip") {
    const auto p = Potential::trig({-0.8, 0.3}, {0.1});
    for (double k : {10.0, 1e3, 1e5, kLimitOrder}) {
        for (double I : {0.2, 1.0, 3.0}) {
            const double c = energy_of_action(k, I, p);
            CHECK(action_of_energy(k, c, p) == doctest::Approx(I).epsilon(1e-9));
        }
    }
}

TEST_CASE("structural identities at finite k") {
    const auto p = Potential::pendulum();
    for (double k : {1e2, 1e4}) {
        for (double I : {0.5, kSepAction, 2.0}) {
            const ActionContext ctx(p, k, I);
            CHECK(ctx.integrate([&](double x) { return ctx.sigma(x); }) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(std::abs(ctx.integrate([&](double x) { return ctx.u(x); })) <= 1e-8);
            const double ref = ctx.sigma(0.0) * ctx.gamma(0.0);
            for (double phi = 0.1; phi < 6.3; phi += 0.5)
                CHECK(ctx.sigma(phi) * ctx.gamma(phi) == doctest::Approx(ref).epsilon(1e-9));
            for (int i = 0; i < 64; ++i) CHECK(std::abs(ctx.hj_residual(oracle::kTwoPi * i / 64.0)) <= 1e-9);
        }
    }
}

TEST_CASE("u derivatives against finite differences") {
    const auto p = Potential::pendulum();
    const double I = 1.7, k = 300.0;
    const ActionContext ctx(p, k, I);
    const double h = 1e-5;
    const ActionContext up(p, k, I + h), down(p, k, I - h);
    for (double phi : {0.3, 1.9, 3.1, 4.4}) {
        CHECK(ctx.u_phi_deriv(phi) ==
              doctest::Approx(oracle::central_diff([&](double x) { return ctx.u(x); }, phi, 1e-5)).epsilon(1e-7).scale(1.0));
        CHECK(ctx.u_action_deriv(phi) == doctest::Approx((up.u(phi) - down.u(phi)) / (2 * h)).epsilon(1e-6).scale(1.0));
        CHECK(ctx.gamma_action_deriv(phi) ==
              doctest::Approx((up.gamma(phi) - down.gamma(phi)) / (2 * h)).epsilon(1e-6).scale(1.0));
    }
    CHECK(ctx.energy_derivative() == doctest::Approx((up.energy() - down.energy()) / (2 * h)).epsilon(1e-5));
    CHECK(ctx.h_bar() == doctest::Approx(ctx.energy() + ctx.log_normalizer() / k).epsilon(1e-14));
}

TEST_CASE("u is periodic and vanishes on average") {
    const auto p = Potential::trig({0.4, -0.2}, {0.3});
    const ActionContext ctx(p, 50.0, 1.1);
    for (double phi = 0.0; phi < 6.3; phi += 0.9)
        CHECK(ctx.u(phi + oracle::kTwoPi) == doctest::Approx(ctx.u(phi)).epsilon(1e-10).scale(1.0));
    CHECK(std::abs(oracle::circle_midpoint([&](double x) { return ctx.u(x); }, 20000)) <= 1e-8);
}

TEST_CASE("property: negative action mirrors the positive one") {
    const auto p = Potential::pendulum();
    const ActionContext pos(p, 100.0, 1.5), neg(p, 100.0, -1.5);
    CHECK(neg.h_bar() == pos.h_bar());
    CHECK(neg.energy() == pos.energy());
    for (double phi : {0.2, 2.0, 5.0}) {
        CHECK(neg.u(phi) == doctest::Approx(-pos.u(phi)).scale(1.0).epsilon(1e-13));
        CHECK(neg.sigma(phi) == pos.sigma(phi));
        CHECK(neg.u_action_deriv(phi) == doctest::Approx(pos.u_action_deriv(phi)).scale(1.0).epsilon(1e-13));
        CHECK(std::abs(neg.hj_residual(phi)) <= 1e-9);
    }
}

TEST_CASE("property: effective Hamiltonian approaches its limit") {
    const auto p = Potential::pendulum();
    const double I2 = action_of_energy(kLimitOrder, 2.0, p);
    double prev_sup = 1e9, prev_sub = 1e9;
    for (double k : {1e2, 1e3, 1e4}) {
        const double sup = std::abs(ActionContext(p, k, I2).h_bar() - 2.0);
        const double sub = std::abs(ActionContext(p, k, 0.5).h_bar() - 1.0);
        CHECK(sup < prev_sup);
        CHECK(sub < prev_sub);
        prev_sup = sup;
        prev_sub = sub;
    }
    CHECK(h_bar_limit(I2, p) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(h_bar_limit(0.5, p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("profile rows") {
    const auto p = Potential::pendulum();
    const ActionContext fin(p, 100.0, 2.0), lim(p, kLimitOrder, 2.0);
    const auto rows = profile(fin, lim, 32);
    REQUIRE(rows.size() == 32);
    CHECK(rows[5].phi == doctest::Approx(oracle::kTwoPi * 5 / 32.0));
    CHECK(rows[5].gamma_k == doctest::Approx(fin.gamma(rows[5].phi)));
    CHECK(rows[5].gamma_0 == doctest::Approx(lim.gamma(rows[5].phi)));
}

TEST_CASE("invalid inputs") {
    const auto p = Potential::pendulum();
    CHECK_THROWS_AS(validate_order(0.0), DomainError);
    CHECK_THROWS_AS(validate_order(-3.0), DomainError);
    CHECK_THROWS_AS(action_of_energy(kLimitOrder, -2.0, p), DomainError);
    CHECK_THROWS_AS(ActionContext(p, 10.0, 0.0), DomainError);
}
