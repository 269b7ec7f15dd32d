#include "weakkam/separatrix.hpp"

#include <cmath>
#include <string>

#include "weakkam/errors.hpp"
#include "weakkam/parallel.hpp"

namespace weakkam {

double separatrix_action(const Potential& potential, const QuadConfig& cfg) {
    if (potential.is_constant()) throw DegenerateInputError("separatrix_action: constant potential has no separatrix");
    if (potential.global_maximizers().size() != 1)
        throw DomainError("separatrix_action: global maximum of f is not unique");
    return action_of_energy(kLimitOrder, potential.f_max(), potential, cfg);
}

double log_period_T(const ActionContext& ctx) { return ctx.log_normalizer(); }

double period_T(const ActionContext& ctx) { return std::exp(log_period_T(ctx)); }

TrajectoryPair trajectory_pair(const ActionContext& ctx, double t_end, double dt) {
    if (ctx.is_limit()) throw DomainError("trajectory_pair: needs a finite-k context");
    const auto& p = ctx.potential();
    double c = energy_of_action(kLimitOrder, ctx.magnitude(), p, ctx.quad_config());
    if (std::abs(c - p.f_max()) <= 1e-9 * std::max(1.0, std::abs(p.f_max()))) c = p.f_max();
    const LevelCurve limit(p, kLimitOrder, c);

    const auto xk = torus_flow(ctx, 0.0, t_end, dt);
    const auto x = integrate_flow([&](double phi) { return limit.gamma(phi); }, 0.0, t_end, dt);
    return {xk.t, xk.phi, x.phi};
}

double measure_pairing(const ActionContext& ctx, const TrigPolynomial& u) {
    return ctx.integrate([&](double phi) { return u.value(phi) * ctx.sigma(phi); });
}

double time_average(const ActionContext& ctx, const TrigPolynomial& u) {
    if (ctx.is_limit()) throw DomainError("time_average: needs a finite-k context");
    const double T = period_T(ctx);
    // RK4 on (x, y)' = (gamma_k(x), u(x)), doubling the step count until the
    // average settles.
    auto run = [&](long n) {
        const double h = T / double(n);
        double x = 0.0, y = 0.0;
        for (long i = 0; i < n; ++i) {
            const double k1 = ctx.gamma(x), l1 = u.value(x);
            const double x2 = x + 0.5 * h * k1;
            const double k2 = ctx.gamma(x2), l2 = u.value(x2);
            const double x3 = x + 0.5 * h * k2;
            const double k3 = ctx.gamma(x3), l3 = u.value(x3);
            const double x4 = x + h * k3;
            const double k4 = ctx.gamma(x4), l4 = u.value(x4);
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            y += h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
        }
        return y / T;
    };
    long n = 1024;
    double prev = run(n);
    for (; n <= (1L << 22); n *= 2) {
        const double next = run(2 * n);
        if (std::abs(next - prev) <= 1e-10) return next;
        prev = next;
    }
    throw AccuracyError("time_average: step doubling did not settle", prev, 1e-10);
}

std::vector<TestFunction> default_test_functions() {
    return {{"cos", TrigPolynomial{0.0, {1.0}, {}}},
            {"sin", TrigPolynomial{0.0, {}, {1.0}}},
            {"cos2", TrigPolynomial{0.0, {0.0, 1.0}, {}}}};
}

SeparatrixReport separatrix_runs(const Potential& potential, const std::vector<double>& k_values,
                                 const std::vector<TestFunction>& tests, const QuadConfig& cfg, unsigned threads) {
    SeparatrixReport rep;
    rep.action = separatrix_action(potential, cfg);
    rep.tests = tests;
    rep.rows.resize(k_values.size());
    parallel_for(k_values.size(), threads, [&](std::size_t i) {
        const ActionContext ctx(potential, k_values[i], rep.action, cfg);
        auto& row = rep.rows[i];
        row.k = k_values[i];
        row.T_k = period_T(ctx);
        for (const auto& t : tests) row.pairings.push_back(measure_pairing(ctx, t.u));
    });
    return rep;
}

}  // namespace weakkam
