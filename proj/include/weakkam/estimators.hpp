#pragma once

/// @file estimators.hpp
/// @brief Mean-square defects E1, E2, the moment families A_{alpha,beta} and
/// a_delta, the lower-bound constants c_R and c_I, k-sweeps and the n-D
/// product construction.

#include <optional>
#include <vector>

#include "weakkam/weakkam.hpp"

namespace weakkam {

struct MomentSpec {
    double alpha = 0.0;
    double beta = 0.0;
    double k = 1.0;
    double c = 0.0;
};

/// ln A_{alpha,beta}(k, c) = ln int gamma_k^{2 alpha} / (1/k + gamma_k^2)^beta.
/// Stays finite where A itself overflows.
double log_moment_A(const MomentSpec& spec, const Potential& potential, const QuadConfig& cfg = {});
double moment_A(const MomentSpec& spec, const Potential& potential, const QuadConfig& cfg = {});

/// a_delta(c) = int [2(c - f)]^{-delta}; requires c > max f.
double moment_a(double delta, double c, const Potential& potential, const QuadConfig& cfg = {});

/// E2 from the closed form (1/k^2) int |f'|^2 sigma_k / (1/k + gamma_k^2)^2.
double e2(const ActionContext& ctx);

/// E2 as int |d/dphi (gamma_k^2/2 + f)|^2 sigma_k with a five-point
/// difference in phi.
double e2_direct(const ActionContext& ctx);

/// [A_{-1/2,2} A_{-1/2,0} - A_{-1/2,1}^2] / (A_{-1/2,0}^2 A_{1/2,1}) at (k, c),
/// evaluated as a sigma_k-variance to avoid cancellation.
double e1_c_integrand(double k, double c, const Potential& potential, const QuadConfig& cfg = {});

/// 2 int |d/dI (gamma_k^2/2 - H_k)|^2 sigma_k dphi at the given action, with
/// a central difference in I.
double e1_action_integrand(double k, double action, const Potential& potential, const QuadConfig& cfg = {});

struct E1Result {
    /// Lower end of the restricted range, I_0(max f + r).
    double action_split = 0.0;
    /// (4pi/k^2) int over [c_k(action_split), c_k(R)] of e1_c_integrand.
    double restricted = 0.0;
    /// int over [0, action_split] of e1_action_integrand.
    double lower = 0.0;
    /// restricted + lower.
    double total = 0.0;
};

/// E1(k) over actions [0, R]. Requires c(R) > max f + r.
E1Result e1(double k, double R, double r, const Potential& potential, const QuadConfig& cfg = {});

struct E1DirectResult {
    double restricted = 0.0;  // over [action_split, R]
    double total = 0.0;       // over [0, R]
};

/// Fully independent evaluation of E1 in the action domain.
E1DirectResult e1_direct(double k, double R, double r, const Potential& potential, const QuadConfig& cfg = {});

/// c_R = 4pi int_{max f + r}^{c(R)} [a_{5/2} a_{1/2} - a_{3/2}^2] / a_{1/2}^3 dc.
/// Throws DegenerateInputError for constant f.
double constant_cR(double r, double R, const Potential& potential, const QuadConfig& cfg = {});

/// c_I = (1/a_{1/2}) int |f'|^2 / [2(c(I) - f)]^{5/2}; requires c(I) > max f.
double constant_cI(double action, const Potential& potential, const QuadConfig& cfg = {});

struct SweepParams {
    std::vector<double> k_values;
    /// Action at which E2 and H_k are reported.
    double action = 1.0;
    double R = 1.0;
    double r = 0.5;
    QuadConfig quad;
    unsigned threads = 1;
};

struct SweepRow {
    double k = 0.0;
    double E1 = 0.0, E1_restricted = 0.0, E2 = 0.0;
    double k2E1 = 0.0, k2E1_restricted = 0.0, k2E2 = 0.0, kE1 = 0.0, kE2 = 0.0;
    /// c_R/k^2 <= restricted E1, the quantity the lower bound is proved for.
    bool cR_over_k2_ok = false;
    /// c_R/k^2 <= full E1.
    bool cR_over_k2_full_ok = false;
    bool cI_over_k2_ok = false;
    bool E1_upper_ok = false, E2_upper_ok = false;
    double h_bar_k = 0.0, c_k = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    /// Constants are absent for constant potentials, where they vanish.
    std::optional<double> c_R, c_tilde_I;
    double fitted_C_upper = 0.0;   // max k E1
    double fitted_C2_upper = 0.0;  // max k E2
    /// Least-squares slopes of ln E against ln k.
    double E1_exponent = 0.0, E2_exponent = 0.0;
    /// Smallest k from which every later row has c_R/k^2 <= restricted E1;
    /// absent if the last row fails.
    std::optional<double> stabilization_k;
};

SweepReport sweep(const Potential& potential, const SweepParams& params);

struct NDimReport {
    int n = 0;
    double k = 0.0;
    std::vector<double> actions;
    double h_bar_1d = 0.0, h_bar_nd = 0.0;
    double E1_1d = 0.0, E1_nd = 0.0;
    double E2_1d = 0.0, E2_nd = 0.0;
    /// int over T^n of sigma_k^{(n)}.
    double sigma_mass = 0.0;
    /// Largest |defect| of the ignorable coordinates over the sample grid.
    double extra_defect = 0.0;
    bool E_equal = false;
};

/// Product construction for f(phi_1, ..., phi_n) = f(phi_1): u^{(n)} = u^{(1)}(phi_1),
/// sigma^{(n)} = sigma^{(1)}(phi_1) (2pi)^{1-n}, H^{(n)} = H^{(1)}(I_1) + sum_{j>=2} I_j^2/2.
/// `ctx` is the 1-D context at I_1, `e1_value` its 1-D E1.
NDimReport ndim_product(const ActionContext& ctx, double e1_value, int n, const std::vector<double>& extra_actions);

}  // namespace weakkam
