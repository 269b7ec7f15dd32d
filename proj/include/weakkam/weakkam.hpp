#pragma once

/// @file weakkam.hpp
/// @brief Level curves, action maps, minimizers u_k, densities sigma_k and
/// effective Hamiltonians for H = I^2/2 + f(phi).
///
/// The order k is a positive real; `kLimitOrder` (+infinity) selects the
/// limit objects gamma_0, c(I), u_0. Contexts keep a pointer to the
/// potential, which must outlive them.

#include <limits>
#include <span>
#include <vector>

#include "weakkam/potential.hpp"
#include "weakkam/quad.hpp"

namespace weakkam {

inline constexpr double kLimitOrder = std::numeric_limits<double>::infinity();

inline bool is_limit_order(double k) { return k == kLimitOrder; }

/// Throws DomainError unless k > 0 (finite) or k == kLimitOrder.
void validate_order(double k);

/// gamma_k(c, .) for finite k, gamma_0(c, .) for k = infinity.
class LevelCurve {
public:
    LevelCurve(const Potential& potential, double k, double c);

    double k() const { return k_; }
    double c() const { return c_; }
    bool is_limit() const { return is_limit_order(k_); }
    const Potential& potential() const { return *potential_; }

    double gamma(double phi) const;
    /// ln gamma; -infinity where gamma_0 vanishes.
    double log_gamma(double phi) const;
    /// W(k e^{2(c - f)k}) = k gamma^2, finite k only.
    double omega(double phi) const;
    /// ln(1/k + gamma^2), finite k only.
    double log_shifted_square(double phi) const;

    /// Level crossings and extrema of f; the only places where the curve can
    /// lose smoothness.
    std::span<const double> breakpoints() const { return breakpoints_; }

    /// Integral over the circle split at the breakpoints.
    double integrate(const Integrand& g, const QuadConfig& cfg) const;

private:
    double exponent(double phi) const;

    const Potential* potential_;
    double k_, c_, log_k_ = 0.0;
    std::vector<double> breakpoints_;
};

/// Free-function form of LevelCurve::gamma.
double gamma(const LevelCurve& level, double phi);

/// I(c) = (1/2pi) int gamma(c, phi) dphi. For k = infinity requires c > min f.
double action_of_energy(double k, double c, const Potential& potential, const QuadConfig& cfg = {});

/// Inverse of action_of_energy for action > 0. Throws DomainError if the
/// action cannot be bracketed.
double energy_of_action(double k, double action, const Potential& potential, const QuadConfig& cfg = {});

/// Same, with the search started around a known nearby energy.
double energy_of_action(double k, double action, double guess, const Potential& potential,
                        const QuadConfig& cfg = {});

/// Nonzero action split into magnitude and sign.
struct SignedAction {
    double magnitude = 1.0;
    int sign = 1;

    static SignedAction of(double action);
    double value() const { return sign * magnitude; }
};

/// (k, action) with the resolved energy and cached quadrature data.
///
/// Construction inverts the action map and tabulates the running integral of
/// gamma at the breakpoints and 32 uniform nodes, so evaluating u costs one
/// short quadrature. A constructed context is immutable.
class ActionContext {
public:
    ActionContext(const Potential& potential, double k, SignedAction action, const QuadConfig& cfg = {});
    ActionContext(const Potential& potential, double k, double action, const QuadConfig& cfg = {});

    /// Context on the level with energy c; the action is computed, not inverted.
    static ActionContext at_energy(const Potential& potential, double k, double c, int sign = 1,
                                   const QuadConfig& cfg = {});

    double k() const { return level_.k(); }
    bool is_limit() const { return level_.is_limit(); }
    double action() const { return action_.value(); }
    double magnitude() const { return action_.magnitude; }
    int sign() const { return action_.sign; }
    double energy() const { return level_.c(); }
    const LevelCurve& level() const { return level_; }
    const Potential& potential() const { return level_.potential(); }
    const QuadConfig& quad_config() const { return cfg_; }

    double gamma(double phi) const { return level_.gamma(phi); }

    /// u_k(I, phi), periodic with zero average.
    double u(double phi) const;
    /// du/dphi = sign * gamma - I.
    double u_phi_deriv(double phi) const;
    /// du/dI, finite k only.
    double u_action_deriv(double phi) const;
    /// d^2u/(dphi dI) = d gamma/dI - 1, finite k only.
    double u_mixed_deriv(double phi) const;
    /// d gamma/dI = gamma c'_k / (1/k + gamma^2), finite k only.
    double gamma_action_deriv(double phi) const;

    /// sigma_k(I, phi), finite k only.
    double sigma(double phi) const;
    double log_sigma(double phi) const;
    /// ln int 1/gamma_k, finite k only.
    double log_normalizer() const;
    /// H_k(I) = c_k + (1/k) ln int 1/gamma_k.
    double h_bar() const;
    /// c'_k(I) = 2pi / A_{1/2,1}(k, c_k), finite k only.
    double energy_derivative() const;

    double hj_residual(double phi) const;
    /// int (gamma^2/2 + f) sigma_k dphi.
    double sigma_weighted_energy() const;

    /// Integral over the circle split at the level's breakpoints.
    double integrate(const Integrand& g) const { return level_.integrate(g, cfg_); }

private:
    ActionContext(const Potential& potential, double k, SignedAction action, double energy, const QuadConfig& cfg);

    struct RunningIntegral {
        std::vector<double> values;  // integral from 0 to each node
        double mean = 0.0;           // (1/2pi) int_0^{2pi} (2pi - x) g(x) dx
    };
    void build();
    void require_finite(const char* what) const;
    RunningIntegral tabulate(const Integrand& g) const;
    double running(const RunningIntegral& table, const Integrand& g, double phi) const;

    LevelCurve level_;
    SignedAction action_;
    QuadConfig cfg_;
    std::vector<double> nodes_;
    RunningIntegral g_table_, dg_table_;
    double log_norm_ = 0.0, log_shift_ = 0.0, energy_deriv_ = 0.0;
};

/// H(I) = c(I) if c(I) > max f, otherwise max f.
double h_bar_limit(double action, const Potential& potential, const QuadConfig& cfg = {});

struct ProfileRow {
    double phi, gamma_k, gamma_0, u_k, u_0, sigma_k;
};

/// Samples at phi_i = 2pi i / grid, i = 0..grid-1. `finite` must have finite k
/// and `limit` k = infinity, both at the same action.
std::vector<ProfileRow> profile(const ActionContext& finite, const ActionContext& limit, int grid);

}  // namespace weakkam
