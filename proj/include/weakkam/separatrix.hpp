#pragma once

/// @file separatrix.hpp
/// @brief Behaviour of sigma_k and of the torus flow at the separatrix action,
/// where c(I) = max f.

#include <string>
#include <vector>

#include "weakkam/dynamics.hpp"
#include "weakkam/weakkam.hpp"

namespace weakkam {

/// The action I_0(max f). Throws DomainError unless f has a unique global
/// maximizer.
double separatrix_action(const Potential& potential, const QuadConfig& cfg = {});

/// T_k = int 1/gamma_k(c_k, x) dx, the period of the torus flow.
double period_T(const ActionContext& ctx);
/// ln T_k, finite where T_k overflows.
double log_period_T(const ActionContext& ctx);

struct TrajectoryPair {
    std::vector<double> t;
    std::vector<double> x_k;  // x' = gamma_k(c_k(I), x)
    std::vector<double> x;    // x' = gamma_0(c(I), x)
};

/// Both orbits from x = 0. At the separatrix the limit energy is taken as
/// max f exactly when c(I) lies within 1e-9 of it.
TrajectoryPair trajectory_pair(const ActionContext& ctx, double t_end, double dt);

/// int u sigma_k.
double measure_pairing(const ActionContext& ctx, const TrigPolynomial& u);

/// (1/T_k) int_0^{T_k} u(x_k(t)) dt, integrated in time along the orbit from 0.
double time_average(const ActionContext& ctx, const TrigPolynomial& u);

struct TestFunction {
    std::string id;
    TrigPolynomial u;
};

/// cos, sin and cos 2 phi.
std::vector<TestFunction> default_test_functions();

struct SeparatrixRow {
    double k = 0.0;
    double T_k = 0.0;
    std::vector<double> pairings;  // one per test function
};

struct SeparatrixReport {
    double action = 0.0;
    std::vector<TestFunction> tests;
    std::vector<SeparatrixRow> rows;
};

/// One context per k at the separatrix action, run on up to `threads` workers.
SeparatrixReport separatrix_runs(const Potential& potential, const std::vector<double>& k_values,
                                 const std::vector<TestFunction>& tests, const QuadConfig& cfg = {},
                                 unsigned threads = 1);

}  // namespace weakkam
