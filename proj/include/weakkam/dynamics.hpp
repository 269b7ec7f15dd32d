#pragma once

/// @file dynamics.hpp
/// @brief Torus flow, its action and angle lifts, the Hamiltonian flow of
/// H = I^2/2 + f and the effective flow of H_k, with the gap between them.
///
/// All angles are unwrapped. Output samples sit at t_i = min(i dt, t_end).

#include <functional>
#include <vector>

#include "weakkam/weakkam.hpp"

namespace weakkam {

/// Default Stormer-Verlet step.
inline constexpr double kVerletStep = 1e-4;

struct TorusTrajectory {
    std::vector<double> t;
    std::vector<double> phi;
};

/// RK4 samples of x' = v(x) from x0. Each output interval is refined by step
/// halving until the two-resolution difference is below 1e-8 per unit time;
/// more than 2^20 substeps raises AccuracyError.
TorusTrajectory integrate_flow(const std::function<double(double)>& v, double x0, double t_end, double dt);

/// integrate_flow for phi' = I + du/dphi = sign * gamma_k(c_k, phi).
TorusTrajectory torus_flow(const ActionContext& ctx, double phi0, double t_end, double dt);

/// I^t = I + du/dphi(phi^t).
std::vector<double> lift_actions(const ActionContext& ctx, const TorusTrajectory& traj);

/// phi~^t = phi^t + du/dI(phi^t).
std::vector<double> lift_angles(const ActionContext& ctx, const TorusTrajectory& traj);

struct HamiltonianTrajectory {
    std::vector<double> t;
    std::vector<double> I;
    std::vector<double> phi;
};

/// Kick-drift-kick Verlet for I' = -f'(phi), phi' = I, sampled every dt with
/// an internal step no larger than max_step.
HamiltonianTrajectory hamiltonian_flow(const Potential& potential, double I0, double phi0, double t_end, double dt,
                                       double max_step = kVerletStep);

/// dH_k/dI by central difference with h = 1e-6 max(1, |I|).
double effective_slope(const ActionContext& ctx);

/// phi~0 + t dH_k/dI.
double effective_flow(const ActionContext& ctx, double phi_tilde0, double t);

struct FlowSample {
    double t, phi_torus, I_lift, phi_tilde, I_ham, phi_ham, phi_eff;
};

/// All flows from the shared initial point (U_I(I, phi0), phi0).
std::vector<FlowSample> trajectory_bundle(const ActionContext& ctx, double phi0, double t_end, double dt);

struct GapSeries {
    std::vector<double> times;
    std::vector<double> d_k;
    /// e^{lambda t} int_0^t |dI/ds + f'(phi^s)| e^{-lambda s} ds along the lift.
    std::vector<double> bound;
    double lambda_H = 1.0;
};

/// Lipschitz bound of the Hamiltonian vector field on [phi_lo, phi_hi]:
/// 1.1 max(1, sup |f''|).
double lipschitz_bound(const Potential& potential, double phi_lo, double phi_hi);

GapSeries gap_series(const ActionContext& ctx, double phi0, double t_end, double dt);

/// int d_k(t, I, phi) sigma_k(I, phi) dphi by the periodic trapezoid rule on
/// n_init uniform initial angles.
double sigma_avg_gap(const ActionContext& ctx, double t, int n_init, double dt = 1e-3);

}  // namespace weakkam
