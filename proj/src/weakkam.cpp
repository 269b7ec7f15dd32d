#include "weakkam/weakkam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "weakkam/errors.hpp"
#include "weakkam/lambert.hpp"

namespace weakkam {
namespace {

constexpr int kUniformNodes = 32;
constexpr int kMaxExpansions = 60;

QuadConfig inversion_config(const QuadConfig& cfg) { return cfg.tightened(1e-13, 1e-15); }
QuadConfig table_config(const QuadConfig& cfg) { return cfg.tightened(1e-12, 1e-14); }

double checked_action(double action) {
    if (!std::isfinite(action) || !(action > 0.0))
        throw DomainError("action must be finite and positive, got " + std::to_string(action));
    return action;
}

double invert_action(double k, double action, double lo, double hi, const Potential& potential,
                     const QuadConfig& cfg) {
    const QuadConfig tight = inversion_config(cfg);
    auto F = [&](double c) { return action_of_energy(k, c, potential, tight); };
    const double floor = is_limit_order(k) ? potential.f_min() + 1e-9 : -std::numeric_limits<double>::infinity();
    lo = std::max(lo, floor);

    double step = std::max(1.0, hi - lo);
    for (int i = 0; F(hi) < action; ++i) {
        if (i == kMaxExpansions) throw DomainError("energy_of_action: action " + std::to_string(action) + " unreachable");
        lo = hi;
        hi += step;
        step *= 2.0;
    }
    step = 1.0;
    for (int i = 0; F(lo) > action; ++i) {
        if (lo == floor || i == kMaxExpansions)
            throw DomainError("energy_of_action: action " + std::to_string(action) + " below the reachable range");
        hi = lo;
        lo = std::max(lo - step, floor);
        step *= 2.0;
    }
    return invert_monotone(F, action, lo, hi);
}

}  // namespace

void validate_order(double k) {
    if (is_limit_order(k)) return;
    if (!std::isfinite(k) || !(k > 0.0)) throw DomainError("order k must be positive or infinite, got " + std::to_string(k));
}

// ---------------------------------------------------------------- LevelCurve

LevelCurve::LevelCurve(const Potential& potential, double k, double c) : potential_(&potential), k_(k), c_(c) {
    validate_order(k);
    if (!std::isfinite(c)) throw DomainError("energy must be finite");
    if (!is_limit()) log_k_ = std::log(k);
    breakpoints_ = potential.breakpoints(c);
}

double LevelCurve::exponent(double phi) const { return 2.0 * (c_ - potential_->eval(phi)) * k_ + log_k_; }

double LevelCurve::omega(double phi) const {
    if (is_limit()) throw DomainError("omega: defined for finite k only");
    return lambert::w_log(exponent(phi));
}

double LevelCurve::gamma(double phi) const {
    if (is_limit()) {
        const double d = c_ - potential_->eval(phi);
        return d > 0.0 ? std::sqrt(2.0 * d) : 0.0;
    }
    return std::sqrt(omega(phi) / k_);
}

double LevelCurve::log_gamma(double phi) const {
    if (is_limit()) {
        const double d = c_ - potential_->eval(phi);
        return d > 0.0 ? 0.5 * std::log(2.0 * d) : -std::numeric_limits<double>::infinity();
    }
    return 0.5 * (lambert::log_w_log(exponent(phi)) - log_k_);
}

double LevelCurve::log_shifted_square(double phi) const { return std::log1p(omega(phi)) - log_k_; }

double LevelCurve::integrate(const Integrand& g, const QuadConfig& cfg) const {
    return integrate_circle(g, breakpoints_, cfg);
}

double gamma(const LevelCurve& level, double phi) { return level.gamma(phi); }

// ---------------------------------------------------------------- action maps

double action_of_energy(double k, double c, const Potential& potential, const QuadConfig& cfg) {
    validate_order(k);
    if (is_limit_order(k) && !(c > potential.f_min()))
        throw DomainError("action_of_energy: the limit curve needs c > min f");
    const LevelCurve level(potential, k, c);
    return annotate("action integral at c = " + std::to_string(c),
                    [&] { return level.integrate([&](double phi) { return level.gamma(phi); }, cfg) / kTwoPi; });
}

double energy_of_action(double k, double action, const Potential& potential, const QuadConfig& cfg) {
    validate_order(k);
    checked_action(action);
    const double hi = 0.5 * action * action + potential.f_max() + 1.0;
    const double lo = is_limit_order(k) ? potential.f_min() + 1e-9 : potential.f_min() - 1.0;
    return annotate("root of I_k(c) = " + std::to_string(action),
                    [&] { return invert_action(k, action, lo, hi, potential, cfg); });
}

double energy_of_action(double k, double action, double guess, const Potential& potential, const QuadConfig& cfg) {
    validate_order(k);
    checked_action(action);
    if (!std::isfinite(guess)) return energy_of_action(k, action, potential, cfg);
    const double delta = 1e-3 * std::max(1.0, std::abs(guess));
    return annotate("root of I_k(c) = " + std::to_string(action),
                    [&] { return invert_action(k, action, guess - delta, guess + delta, potential, cfg); });
}

SignedAction SignedAction::of(double action) {
    if (!std::isfinite(action) || action == 0.0)
        throw DomainError("signed action must be finite and nonzero, got " + std::to_string(action));
    return {std::abs(action), action < 0.0 ? -1 : 1};
}

double h_bar_limit(double action, const Potential& potential, const QuadConfig& cfg) {
    const double c = energy_of_action(kLimitOrder, std::abs(checked_action(std::abs(action))), potential, cfg);
    return c > potential.f_max() ? c : potential.f_max();
}

// ---------------------------------------------------------------- ActionContext

ActionContext::ActionContext(const Potential& potential, double k, SignedAction action, const QuadConfig& cfg)
    : ActionContext(potential, k, action, energy_of_action(k, checked_action(action.magnitude), potential, cfg),
                    cfg) {}

ActionContext::ActionContext(const Potential& potential, double k, double action, const QuadConfig& cfg)
    : ActionContext(potential, k, SignedAction::of(action), cfg) {}

ActionContext::ActionContext(const Potential& potential, double k, SignedAction action, double energy,
                             const QuadConfig& cfg)
    : level_(potential, k, energy), action_(action), cfg_(cfg) {
    cfg_.validate();
    if (action_.sign != 1 && action_.sign != -1) throw DomainError("action sign must be +1 or -1");
    build();
}

ActionContext ActionContext::at_energy(const Potential& potential, double k, double c, int sign,
                                       const QuadConfig& cfg) {
    const double action = action_of_energy(k, c, potential, inversion_config(cfg));
    return ActionContext(potential, k, SignedAction{checked_action(action), sign}, c, cfg);
}

void ActionContext::require_finite(const char* what) const {
    if (is_limit()) throw DomainError(std::string(what) + ": defined for finite k only");
}

void ActionContext::build() {
    nodes_ = {0.0, kTwoPi};
    for (double b : level_.breakpoints()) nodes_.push_back(b);
    for (int i = 1; i < kUniformNodes; ++i) nodes_.push_back(kTwoPi * i / kUniformNodes);
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end(), [](double a, double b) { return b - a < 1e-12; }),
                 nodes_.end());
    nodes_.back() = kTwoPi;

    g_table_ = tabulate([this](double phi) { return level_.gamma(phi); });
    if (is_limit()) return;

    const QuadConfig tight = table_config(cfg_);
    log_shift_ = -level_.log_gamma(potential().argmax());
    const double scaled = annotate("normalizer of sigma_k", [this] {
        return integrate([this](double phi) { return std::exp(-level_.log_gamma(phi) - log_shift_); });
    });
    log_norm_ = log_shift_ + std::log(scaled);

    const double k = level_.k();
    const double a_half_one = level_.integrate(
        [&](double phi) {
            const double w = level_.omega(phi);
            return std::sqrt(w * k) / (1.0 + w);
        },
        tight);
    energy_deriv_ = kTwoPi / a_half_one;
    dg_table_ = tabulate([this](double phi) { return gamma_action_deriv(phi); });
}

ActionContext::RunningIntegral ActionContext::tabulate(const Integrand& g) const {
    const QuadConfig tight = table_config(cfg_);
    RunningIntegral t;
    t.values.assign(nodes_.size(), 0.0);
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        t.values[i] = t.values[i - 1] + integrate_endpoint_singular(g, nodes_[i - 1], nodes_[i], tight);
    t.mean = level_.integrate([&](double x) { return (kTwoPi - x) * g(x); }, tight) / kTwoPi;
    return t;
}

double ActionContext::running(const RunningIntegral& table, const Integrand& g, double phi) const {
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), phi);
    const std::size_t i = std::size_t(std::max<std::ptrdiff_t>(0, it - nodes_.begin() - 1));
    return table.values[i] + integrate_endpoint_singular(g, nodes_[i], phi, table_config(cfg_));
}

double ActionContext::u(double phi) const {
    const double x = reduce_angle(phi);
    const double m = magnitude();
    const double g = running(g_table_, [this](double s) { return level_.gamma(s); }, x);
    return sign() * (m * (std::numbers::pi - x) - g_table_.mean + g);
}

double ActionContext::u_phi_deriv(double phi) const { return sign() * level_.gamma(phi) - action(); }

double ActionContext::gamma_action_deriv(double phi) const {
    require_finite("gamma_action_deriv");
    const double w = level_.omega(phi);
    return energy_deriv_ * std::sqrt(w * level_.k()) / (1.0 + w);
}

// u(-I) = -u(|I|), so du/dI is even in I.
double ActionContext::u_action_deriv(double phi) const {
    require_finite("u_action_deriv");
    const double x = reduce_angle(phi);
    const double g = running(dg_table_, [this](double s) { return gamma_action_deriv(s); }, x);
    return (std::numbers::pi - x) - dg_table_.mean + g;
}

double ActionContext::u_mixed_deriv(double phi) const { return gamma_action_deriv(phi) - 1.0; }

double ActionContext::log_sigma(double phi) const {
    require_finite("sigma");
    return -level_.log_gamma(phi) - log_norm_;
}

double ActionContext::sigma(double phi) const { return std::exp(log_sigma(phi)); }

double ActionContext::log_normalizer() const {
    require_finite("log_normalizer");
    return log_norm_;
}

double ActionContext::h_bar() const {
    require_finite("h_bar_k");
    return energy() + log_norm_ / k();
}

double ActionContext::energy_derivative() const {
    require_finite("energy_derivative");
    return energy_deriv_;
}

double ActionContext::hj_residual(double phi) const {
    require_finite("hj_residual");
    const double p = action() + u_phi_deriv(phi);
    // |p| = gamma; its logarithm is taken from the log-scaled evaluation,
    // which stays finite where gamma itself underflows.
    return 0.5 * p * p + potential().eval(phi) + level_.log_gamma(phi) / k() - energy();
}

double ActionContext::sigma_weighted_energy() const {
    require_finite("sigma_weighted_energy");
    return integrate([this](double phi) {
        const double g = level_.gamma(phi);
        return (0.5 * g * g + potential().eval(phi)) * sigma(phi);
    });
}

std::vector<ProfileRow> profile(const ActionContext& finite, const ActionContext& limit, int grid) {
    if (grid < 1) throw DomainError("profile: grid must be positive");
    if (finite.is_limit() || !limit.is_limit()) throw DomainError("profile: expects a finite-k and a limit context");
    std::vector<ProfileRow> rows;
    rows.reserve(std::size_t(grid));
    for (int i = 0; i < grid; ++i) {
        const double phi = kTwoPi * i / grid;
        rows.push_back({phi, finite.gamma(phi), limit.gamma(phi), finite.u(phi), limit.u(phi), finite.sigma(phi)});
    }
    return rows;
}

}  // namespace weakkam
