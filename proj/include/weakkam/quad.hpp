#pragma once

/// @file quad.hpp
/// @brief Adaptive quadrature on intervals and on the circle, and inversion
/// of strictly increasing maps.

#include <functional>
#include <span>

namespace weakkam {

using Integrand = std::function<double(double)>;

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    /// Throws DomainError unless tolerances are positive and the budget is >= 1.
    void validate() const;
    /// Copy with tolerances no looser than the given ones.
    QuadConfig tightened(double rel, double abs) const;
};

struct RootConfig {
    double tol = 1e-12;
    int max_iter = 200;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration on [a, b], always
/// bisecting the panel with the largest error estimate. Throws AccuracyError
/// (carrying the best estimate and its bound) when the subdivision budget is
/// exhausted.
QuadResult integrate_adaptive(const Integrand& g, double a, double b, const QuadConfig& cfg = {});

double integrate(const Integrand& g, double a, double b, const QuadConfig& cfg = {});

/// Integral over [a, b] of a function with possible square-root behaviour at
/// both endpoints. Each half is mapped by x = endpoint +- t^2, which removes
/// integrable (x - a)^{-1/2} singularities and sqrt kinks.
double integrate_endpoint_singular(const Integrand& g, double a, double b, const QuadConfig& cfg = {});

/// One-sided variant: square-root behaviour only at `from`; `to` may lie on
/// either side of `from`.
double integrate_from_singular(const Integrand& g, double from, double to, const QuadConfig& cfg = {});

/// Integral over [a, b] split at the given interior points, with endpoint
/// substitution on every piece.
double integrate_partitioned(const Integrand& g, double a, double b, std::span<const double> breakpoints,
                             const QuadConfig& cfg = {});

/// Integral of g over [0, 2pi].
double integrate_circle(const Integrand& g, const QuadConfig& cfg = {});

/// Integral of g over [0, 2pi] split at the given angles (reduced mod 2pi);
/// square-root endpoint behaviour is allowed at every breakpoint.
double integrate_circle(const Integrand& g, std::span<const double> breakpoints, const QuadConfig& cfg = {});

/// x in [lo, hi] with |F(x) - target| <= tol * max(1, |target|) for F strictly
/// increasing on [lo, hi]. Throws BracketError if F(lo) > target or
/// F(hi) < target, AccuracyError if the iteration budget runs out.
double invert_monotone(const Integrand& F, double target, double lo, double hi, const RootConfig& cfg = {});

}  // namespace weakkam
