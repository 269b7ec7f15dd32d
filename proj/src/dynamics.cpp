#include "weakkam/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakkam/errors.hpp"

namespace weakkam {
namespace {

constexpr double kTorusTol = 1e-8;
constexpr long kMaxSubsteps = 1L << 20;

std::vector<double> time_grid(double t_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be nonnegative");
    const long n = long(std::ceil(t_end / dt - 1e-9));
    std::vector<double> t(std::size_t(n + 1));
    for (long i = 0; i <= n; ++i) t[std::size_t(i)] = std::min(double(i) * dt, t_end);
    return t;
}

template <class F>
double rk4(const F& v, double x, double h, long steps) {
    for (long i = 0; i < steps; ++i) {
        const double k1 = v(x);
        const double k2 = v(x + 0.5 * h * k1);
        const double k3 = v(x + 0.5 * h * k2);
        const double k4 = v(x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

}  // namespace

TorusTrajectory torus_flow(const ActionContext& ctx, double phi0, double t_end, double dt) {
    if (ctx.is_limit()) throw DomainError("torus_flow: defined for finite k only");
    return integrate_flow([&](double phi) { return ctx.sign() * ctx.gamma(phi); }, phi0, t_end, dt);
}

TorusTrajectory integrate_flow(const std::function<double(double)>& v, double phi0, double t_end, double dt) {
    TorusTrajectory out;
    out.t = time_grid(t_end, dt);
    out.phi.reserve(out.t.size());
    out.phi.push_back(phi0);
    long n = 1;
    for (std::size_t i = 1; i < out.t.size(); ++i) {
        const double span = out.t[i] - out.t[i - 1];
        const double x = out.phi.back();
        n = std::max(1L, n / 2);
        for (;;) {
            const double coarse = rk4(v, x, span / double(n), n);
            const double fine = rk4(v, x, span / double(2 * n), 2 * n);
            if (std::abs(fine - coarse) <= kTorusTol * span) {
                out.phi.push_back(fine);
                break;
            }
            n *= 2;
            if (n > kMaxSubsteps) {
                throw AccuracyError("flow: step halving exceeded its budget at t = " + std::to_string(out.t[i]),
                                    fine, std::abs(fine - coarse));
            }
        }
    }
    return out;
}

std::vector<double> lift_actions(const ActionContext& ctx, const TorusTrajectory& traj) {
    std::vector<double> I;
    I.reserve(traj.phi.size());
    for (double phi : traj.phi) I.push_back(ctx.action() + ctx.u_phi_deriv(phi));
    return I;
}

std::vector<double> lift_angles(const ActionContext& ctx, const TorusTrajectory& traj) {
    std::vector<double> out;
    out.reserve(traj.phi.size());
    for (double phi : traj.phi) out.push_back(phi + ctx.u_action_deriv(phi));
    return out;
}

HamiltonianTrajectory hamiltonian_flow(const Potential& potential, double I0, double phi0, double t_end, double dt,
                                       double max_step) {
    if (!(max_step > 0.0)) throw DomainError("hamiltonian_flow: max_step must be positive");
    HamiltonianTrajectory out;
    out.t = time_grid(t_end, dt);
    out.I.reserve(out.t.size());
    out.phi.reserve(out.t.size());
    double I = I0, phi = phi0;
    out.I.push_back(I);
    out.phi.push_back(phi);
    for (std::size_t i = 1; i < out.t.size(); ++i) {
        const double span = out.t[i] - out.t[i - 1];
        const long m = std::max(1L, long(std::ceil(span / max_step - 1e-9)));
        const double h = span / double(m);
        for (long s = 0; s < m; ++s) {
            I -= 0.5 * h * potential.eval_deriv(phi);
            phi += h * I;
            I -= 0.5 * h * potential.eval_deriv(phi);
        }
        out.I.push_back(I);
        out.phi.push_back(phi);
    }
    return out;
}

double effective_slope(const ActionContext& ctx) {
    if (ctx.is_limit()) throw DomainError("effective_slope: defined for finite k only");
    const double m = ctx.magnitude();
    const double h = 1e-6 * std::max(1.0, m);
    const auto& p = ctx.potential();
    const auto& cfg = ctx.quad_config();
    auto h_bar_at = [&](double action) {
        const double c = energy_of_action(ctx.k(), action, ctx.energy(), p, cfg);
        return ActionContext::at_energy(p, ctx.k(), c, 1, cfg).h_bar();
    };
    // H_k is even in I, so the slope is odd.
    return ctx.sign() * (h_bar_at(m + h) - h_bar_at(m - h)) / (2.0 * h);
}

double effective_flow(const ActionContext& ctx, double phi_tilde0, double t) {
    return phi_tilde0 + t * effective_slope(ctx);
}

std::vector<FlowSample> trajectory_bundle(const ActionContext& ctx, double phi0, double t_end, double dt) {
    const auto torus = torus_flow(ctx, phi0, t_end, dt);
    const auto I_lift = lift_actions(ctx, torus);
    const auto phi_tilde = lift_angles(ctx, torus);
    const auto ham = hamiltonian_flow(ctx.potential(), I_lift.front(), phi0, t_end, dt);
    const double slope = effective_slope(ctx);
    std::vector<FlowSample> rows;
    rows.reserve(torus.t.size());
    for (std::size_t i = 0; i < torus.t.size(); ++i) {
        const double t = torus.t[i];
        rows.push_back({t, torus.phi[i], I_lift[i], phi_tilde[i], ham.I[i], ham.phi[i], phi_tilde.front() + t * slope});
    }
    return rows;
}

double lipschitz_bound(const Potential& potential, double phi_lo, double phi_hi) {
    if (phi_hi < phi_lo) std::swap(phi_lo, phi_hi);
    double sup = 0.0;
    if (phi_hi - phi_lo >= kTwoPi) {
        phi_lo = 0.0;
        phi_hi = kTwoPi;
    }
    constexpr int n = 1024;
    for (int i = 0; i <= n; ++i)
        sup = std::max(sup, std::abs(potential.eval_second_deriv(phi_lo + (phi_hi - phi_lo) * i / n)));
    for (double e : potential.local_extrema()) {
        for (double x = e; x <= phi_hi; x += kTwoPi)
            if (x >= phi_lo) sup = std::max(sup, std::abs(potential.eval_second_deriv(x)));
    }
    return 1.1 * std::max(1.0, sup);
}

GapSeries gap_series(const ActionContext& ctx, double phi0, double t_end, double dt) {
    const auto torus = torus_flow(ctx, phi0, t_end, dt);
    const auto I_lift = lift_actions(ctx, torus);
    const auto& p = ctx.potential();
    const auto ham = hamiltonian_flow(p, I_lift.front(), phi0, t_end, dt);

    GapSeries out;
    out.times = torus.t;
    const auto [tlo, thi] = std::minmax_element(torus.phi.begin(), torus.phi.end());
    const auto [hlo, hhi] = std::minmax_element(ham.phi.begin(), ham.phi.end());
    out.lambda_H = lipschitz_bound(p, std::min(*tlo, *hlo), std::max(*thi, *hhi));

    const double k = ctx.k();
    const double lam = out.lambda_H;
    // dI/dt + f' = f' / (1 + k gamma^2) along the lift.
    auto defect = [&](std::size_t i) {
        const double phi = torus.phi[i];
        const double g = ctx.gamma(phi);
        return std::abs(p.eval_deriv(phi)) / (1.0 + k * g * g) * std::exp(-lam * torus.t[i]);
    };
    double acc = 0.0, prev = defect(0);
    for (std::size_t i = 0; i < torus.t.size(); ++i) {
        if (i > 0) {
            const double cur = defect(i);
            acc += 0.5 * (prev + cur) * (torus.t[i] - torus.t[i - 1]);
            prev = cur;
        }
        out.d_k.push_back(std::hypot(I_lift[i] - ham.I[i], torus.phi[i] - ham.phi[i]));
        out.bound.push_back(std::exp(lam * torus.t[i]) * acc);
    }
    return out;
}

double sigma_avg_gap(const ActionContext& ctx, double t, int n_init, double dt) {
    if (n_init < 1) throw DomainError("sigma_avg_gap: n_init must be positive");
    double sum = 0.0;
    for (int j = 0; j < n_init; ++j) {
        const double phi = kTwoPi * j / n_init;
        const auto torus = torus_flow(ctx, phi, t, dt);
        const double I0 = ctx.action() + ctx.u_phi_deriv(phi);
        const auto ham = hamiltonian_flow(ctx.potential(), I0, phi, t, dt);
        const double I_lift = ctx.action() + ctx.u_phi_deriv(torus.phi.back());
        const double d = std::hypot(I_lift - ham.I.back(), torus.phi.back() - ham.phi.back());
        sum += d * ctx.sigma(phi);
    }
    return sum * kTwoPi / n_init;
}

}  // namespace weakkam
