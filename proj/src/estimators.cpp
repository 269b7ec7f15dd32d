#include "weakkam/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "weakkam/errors.hpp"
#include "weakkam/parallel.hpp"

namespace weakkam {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite_order(double k, const char* what) {
    validate_order(k);
    if (is_limit_order(k)) throw DomainError(std::string(what) + ": defined for finite k only");
}

// The difference quotients in I carry relative noise near 1e-8, so the
// quadratures over them cannot ask for more than this.
QuadConfig difference_config() { return {1e-7, 1e-30, 2000}; }
// E1 is at least of order 1/k^2 unless it vanishes identically.
QuadConfig outer_action_config(double k) { return {1e-6, 1e-14 / (k * k), 400}; }

// ln int exp(-ln gamma) over the level, shifted by the value at argmax f.
double log_inverse_gamma_mass(const LevelCurve& level, const QuadConfig& cfg) {
    const double s = -level.log_gamma(level.potential().argmax());
    return s + std::log(level.integrate([&](double phi) { return std::exp(-level.log_gamma(phi) - s); }, cfg));
}

// Var_sigma(q) / A_{1/2,1} with q = 1/(1/k + gamma^2) = k/(1 + omega).
double variance_ratio(const LevelCurve& level, const QuadConfig& cfg) {
    const double k = level.k();
    const double s = -level.log_gamma(level.potential().argmax());
    auto weight = [&](double phi) { return std::exp(-level.log_gamma(phi) - s); };
    auto q = [&](double phi) { return k / (1.0 + level.omega(phi)); };
    const double z = level.integrate(weight, cfg);
    const double mean = level.integrate([&](double phi) { return weight(phi) * q(phi); }, cfg) / z;
    const double var = level.integrate(
                           [&](double phi) {
                               const double d = q(phi) - mean;
                               return weight(phi) * d * d;
                           },
                           cfg) /
                       z;
    const double a_half_one = level.integrate(
        [&](double phi) {
            const double w = level.omega(phi);
            return std::sqrt(w * k) / (1.0 + w);
        },
        cfg);
    return var / a_half_one;
}

double limit_energy_checked(double R, double r, const Potential& potential, const QuadConfig& cfg) {
    if (!(r > 0.0)) throw DomainError("r must be positive");
    const double cR = energy_of_action(kLimitOrder, R, potential, cfg);
    if (!(cR > potential.f_max() + r))
        throw DomainError("need c(R) > max f + r; c(R) = " + std::to_string(cR) + ", max f + r = " +
                          std::to_string(potential.f_max() + r));
    return cR;
}

std::vector<double> separatrix_break(const Potential& potential, double lo, double hi, const QuadConfig& cfg) {
    if (potential.is_constant()) return {};
    const double sep = action_of_energy(kLimitOrder, potential.f_max(), potential, cfg);
    if (sep > lo && sep < hi) return {sep};
    return {};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
        ++n;
    }
    const double den = n * sxx - sx * sx;
    if (n < 2 || den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / den;
}

}  // namespace

// ---------------------------------------------------------------- moments

double log_moment_A(const MomentSpec& spec, const Potential& potential, const QuadConfig& cfg) {
    require_finite_order(spec.k, "moment_A");
    if (!(spec.beta >= 0.0)) throw DomainError("moment_A: beta must be nonnegative");
    const LevelCurve level(potential, spec.k, spec.c);
    auto log_integrand = [&](double phi) {
        return 2.0 * spec.alpha * level.log_gamma(phi) - spec.beta * level.log_shifted_square(phi);
    };
    double s = std::max(log_integrand(potential.argmax()), log_integrand(potential.argmin()));
    for (int i = 0; i < 64; ++i) s = std::max(s, log_integrand(kTwoPi * i / 64));
    return s + std::log(level.integrate([&](double phi) { return std::exp(log_integrand(phi) - s); }, cfg));
}

double moment_A(const MomentSpec& spec, const Potential& potential, const QuadConfig& cfg) {
    return std::exp(log_moment_A(spec, potential, cfg));
}

double moment_a(double delta, double c, const Potential& potential, const QuadConfig& cfg) {
    if (!(c > potential.f_max())) throw DomainError("moment_a: requires c > max f");
    return integrate_circle([&](double phi) { return std::pow(2.0 * (c - potential.eval(phi)), -delta); },
                            potential.local_extrema(), cfg);
}

// ---------------------------------------------------------------- E2

double e2(const ActionContext& ctx) {
    if (ctx.is_limit()) throw DomainError("e2: defined for finite k only");
    const auto& level = ctx.level();
    const auto& p = ctx.potential();
    return annotate("E2 integral", [&] {
        return ctx.integrate([&](double phi) {
            const double d = p.eval_deriv(phi) / (1.0 + level.omega(phi));
            return d * d * ctx.sigma(phi);
        });
    });
}

double e2_direct(const ActionContext& ctx) {
    if (ctx.is_limit()) throw DomainError("e2_direct: defined for finite k only");
    constexpr double h = 1e-3;
    const auto& p = ctx.potential();
    auto energy = [&](double phi) {
        const double g = ctx.gamma(phi);
        return 0.5 * g * g + p.eval(phi);
    };
    return ctx.integrate([&](double phi) {
        const double d = (energy(phi - 2 * h) - 8.0 * energy(phi - h) + 8.0 * energy(phi + h) - energy(phi + 2 * h)) /
                         (12.0 * h);
        return d * d * ctx.sigma(phi);
    });
}

// ---------------------------------------------------------------- E1

double e1_c_integrand(double k, double c, const Potential& potential, const QuadConfig& cfg) {
    require_finite_order(k, "e1_c_integrand");
    return variance_ratio(LevelCurve(potential, k, c), cfg);
}

double e1_action_integrand(double k, double action, const Potential& potential, const QuadConfig& cfg) {
    require_finite_order(k, "e1_action_integrand");
    if (!(action > 0.0)) throw DomainError("e1_action_integrand: action must be positive");
    const double h = std::min(1e-5 * std::max(1.0, action), 0.5 * action);
    const double c0 = energy_of_action(k, action, potential, cfg);
    const LevelCurve mid(potential, k, c0);
    const LevelCurve up(potential, k, energy_of_action(k, action + h, c0, potential, cfg));
    const LevelCurve down(potential, k, energy_of_action(k, action - h, c0, potential, cfg));

    // H_k enters through a difference quotient, so its normalizer must be
    // resolved well below the step h.
    const QuadConfig tight = cfg.tightened(1e-13, 1e-15);
    const double log_z = log_inverse_gamma_mass(mid, cfg);
    auto h_bar = [&](const LevelCurve& level) { return level.c() + log_inverse_gamma_mass(level, tight) / k; };
    const double hb_up = h_bar(up), hb_down = h_bar(down);
    auto integrand = [&](double phi) {
        const double gu = up.gamma(phi), gd = down.gamma(phi);
        const double d = ((0.5 * gu * gu - hb_up) - (0.5 * gd * gd - hb_down)) / (2.0 * h);
        return d * d * std::exp(-mid.log_gamma(phi) - log_z);
    };

    // Rounding in the quotient is about delta = eps * scale / h. A J below
    // 2 delta^2 is indistinguishable from zero, and above it
    // |int 2 d delta sigma| <= 2 sqrt(J/2) delta, so no tolerance below those
    // is meaningful. A coarse pass supplies J.
    const double g_max = up.gamma(potential.argmin());
    const double delta = 64.0 * std::numeric_limits<double>::epsilon() *
                         (0.5 * g_max * g_max + std::abs(hb_up)) / (2.0 * h);
    const double floor = 8.0 * delta * delta;
    const QuadConfig inner = difference_config();
    const double rough = 2.0 * mid.integrate(integrand, {1e-3, std::max(inner.abs_tol, floor), inner.max_subdivisions});
    QuadConfig fine = inner;
    fine.abs_tol = std::max({fine.abs_tol, floor, std::sqrt(2.0 * std::abs(rough)) * delta});
    return 2.0 * mid.integrate(integrand, fine);
}

E1Result e1(double k, double R, double r, const Potential& potential, const QuadConfig& cfg) {
    require_finite_order(k, "e1");
    limit_energy_checked(R, r, potential, cfg);
    E1Result out;
    out.action_split = action_of_energy(kLimitOrder, potential.f_max() + r, potential, cfg);

    const double c_lo = energy_of_action(k, out.action_split, potential, cfg);
    const double c_hi = energy_of_action(k, R, potential, cfg);
    const QuadConfig outer{1e-9, 1e-30, cfg.max_subdivisions};
    out.restricted = annotate("E1 restricted integral over c", [&] {
        return 4.0 * kPi / (k * k) *
               integrate([&](double c) { return e1_c_integrand(k, c, potential, cfg); }, c_lo, c_hi, outer);
    });

    const auto brk = separatrix_break(potential, 0.0, out.action_split, cfg);
    out.lower = annotate("E1 integral over [0, I(max f + r)]", [&] {
        return integrate_partitioned([&](double a) { return e1_action_integrand(k, a, potential, cfg); }, 0.0,
                                     out.action_split, brk, outer_action_config(k));
    });
    out.total = out.restricted + out.lower;
    return out;
}

E1DirectResult e1_direct(double k, double R, double r, const Potential& potential, const QuadConfig& cfg) {
    require_finite_order(k, "e1_direct");
    limit_energy_checked(R, r, potential, cfg);
    const double split = action_of_energy(kLimitOrder, potential.f_max() + r, potential, cfg);
    auto J = [&](double a) { return e1_action_integrand(k, a, potential, cfg); };
    E1DirectResult out;
    out.restricted = annotate("direct E1 integral over [I(max f + r), R]",
                              [&] { return integrate(J, split, R, outer_action_config(k)); });
    out.total = annotate("direct E1 integral over [0, R]", [&] {
        return integrate_partitioned(J, 0.0, R, separatrix_break(potential, 0.0, R, cfg), outer_action_config(k));
    });
    return out;
}

// ---------------------------------------------------------------- constants

double constant_cR(double r, double R, const Potential& potential, const QuadConfig& cfg) {
    if (potential.is_constant()) throw DegenerateInputError("constant_cR: c_R vanishes for a constant potential");
    const double cR = limit_energy_checked(R, r, potential, cfg);
    const auto brk = potential.local_extrema();
    // [a_{5/2} a_{1/2} - a_{3/2}^2] / a_{1/2}^3 = Var_p(v) / a_{1/2}, with
    // v = 1/(2(c - f)) and p proportional to v^{1/2}.
    auto integrand = [&](double c) {
        auto v = [&](double phi) { return 1.0 / (2.0 * (c - potential.eval(phi))); };
        const double a_half = integrate_circle([&](double phi) { return std::sqrt(v(phi)); }, brk, cfg);
        const double mean = integrate_circle([&](double phi) { return std::pow(v(phi), 1.5); }, brk, cfg) / a_half;
        const double var = integrate_circle(
                               [&](double phi) {
                                   const double x = v(phi);
                                   return std::sqrt(x) * (x - mean) * (x - mean);
                               },
                               brk, cfg) /
                           a_half;
        return var / a_half;
    };
    return annotate("c_R integral", [&] {
        return 4.0 * kPi * integrate(integrand, potential.f_max() + r, cR, cfg.tightened(1e-10, 1e-30));
    });
}

double constant_cI(double action, const Potential& potential, const QuadConfig& cfg) {
    const double c = energy_of_action(kLimitOrder, std::abs(action), potential, cfg);
    if (!(c > potential.f_max())) throw DomainError("constant_cI: requires c(I) > max f");
    const auto brk = potential.local_extrema();
    const double num = annotate("c_I integral", [&] {
        return integrate_circle(
            [&](double phi) {
                const double d = potential.eval_deriv(phi);
                return d * d * std::pow(2.0 * (c - potential.eval(phi)), -2.5);
            },
            brk, cfg);
    });
    return num / moment_a(0.5, c, potential, cfg);
}

// ---------------------------------------------------------------- sweep

SweepReport sweep(const Potential& potential, const SweepParams& params) {
    if (params.k_values.empty()) throw DomainError("sweep: k list is empty");
    for (double k : params.k_values) require_finite_order(k, "sweep");
    SweepReport rep;
    if (!potential.is_constant()) {
        rep.c_R = constant_cR(params.r, params.R, potential, params.quad);
        rep.c_tilde_I = constant_cI(params.action, potential, params.quad);
    }
    rep.rows.resize(params.k_values.size());
    parallel_for(params.k_values.size(), params.threads, [&](std::size_t i) {
        const double k = params.k_values[i];
        const ActionContext ctx(potential, k, params.action, params.quad);
        const auto E1 = e1(k, params.R, params.r, potential, params.quad);
        SweepRow& row = rep.rows[i];
        row.k = k;
        row.E1 = E1.total;
        row.E1_restricted = E1.restricted;
        row.E2 = e2(ctx);
        row.h_bar_k = ctx.h_bar();
        row.c_k = ctx.energy();
    });

    std::vector<double> ks, e1s, e2s;
    for (auto& row : rep.rows) {
        const double k2 = row.k * row.k;
        row.k2E1 = k2 * row.E1;
        row.k2E1_restricted = k2 * row.E1_restricted;
        row.k2E2 = k2 * row.E2;
        row.kE1 = row.k * row.E1;
        row.kE2 = row.k * row.E2;
        row.cR_over_k2_ok = rep.c_R ? *rep.c_R / k2 <= row.E1_restricted : true;
        row.cR_over_k2_full_ok = rep.c_R ? *rep.c_R / k2 <= row.E1 : true;
        row.cI_over_k2_ok = rep.c_tilde_I ? *rep.c_tilde_I / k2 <= row.E2 : true;
        rep.fitted_C_upper = std::max(rep.fitted_C_upper, row.kE1);
        rep.fitted_C2_upper = std::max(rep.fitted_C2_upper, row.kE2);
        ks.push_back(row.k);
        e1s.push_back(row.E1);
        e2s.push_back(row.E2);
    }
    for (auto& row : rep.rows) {
        row.E1_upper_ok = row.E1 <= rep.fitted_C_upper / row.k;
        row.E2_upper_ok = row.E2 <= rep.fitted_C2_upper / row.k;
    }
    rep.E1_exponent = log_log_slope(ks, e1s);
    rep.E2_exponent = log_log_slope(ks, e2s);

    std::vector<std::size_t> order(rep.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rep.rows[a].k < rep.rows[b].k; });
    for (auto it = order.rbegin(); it != order.rend() && rep.rows[*it].cR_over_k2_ok; ++it)
        rep.stabilization_k = rep.rows[*it].k;
    return rep;
}

// ---------------------------------------------------------------- n-D product

NDimReport ndim_product(const ActionContext& ctx, double e1_value, int n, const std::vector<double>& extra_actions) {
    if (n < 2) throw DomainError("ndim_product: n must be at least 2");
    if (ctx.is_limit()) throw DomainError("ndim_product: needs a finite-k context");
    if (extra_actions.size() != std::size_t(n - 1))
        throw DomainError("ndim_product: expected " + std::to_string(n - 1) + " extra actions");

    NDimReport rep;
    rep.n = n;
    rep.k = ctx.k();
    rep.actions.push_back(ctx.action());
    rep.actions.insert(rep.actions.end(), extra_actions.begin(), extra_actions.end());
    rep.h_bar_1d = ctx.h_bar();
    rep.h_bar_nd = rep.h_bar_1d;
    for (double a : extra_actions) rep.h_bar_nd += 0.5 * a * a;

    // In an ignorable coordinate I_j is conserved, f does not depend on phi_j,
    // u has no phi_j or I_j dependence and dH/dI_j = I_j, so both defects
    // vanish identically.
    double e1_extra = 0.0, e2_extra = 0.0;
    const double marginal = 1.0 / kTwoPi;
    double mass = ctx.integrate([&](double phi) { return ctx.sigma(phi); });
    for (double a : extra_actions) {
        const double slice = integrate_circle([&](double) { return marginal; });
        mass *= slice;
        const double angle_rate = a;  // d phi~_j/dt = I_j + du/dphi_j + d/dt du/dI_j
        const double d1 = angle_rate - a;
        const double d2 = 0.0;  // dI_j/dt + df/dphi_j
        rep.extra_defect = std::max({rep.extra_defect, std::abs(d1), std::abs(d2)});
        e1_extra += d1 * d1 * mass;
        e2_extra += d2 * d2 * mass;
    }
    rep.sigma_mass = mass;
    rep.E1_1d = e1_value;
    rep.E2_1d = e2(ctx);
    rep.E1_nd = rep.E1_1d + e1_extra;
    rep.E2_nd = rep.E2_1d + e2_extra;
    rep.E_equal = rep.E1_nd == rep.E1_1d && rep.E2_nd == rep.E2_1d;
    return rep;
}

}  // namespace weakkam
