#pragma once

/// @file potential.hpp
/// @brief Periodic potentials f(phi) on the circle.

#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

namespace weakkam {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Reduce an angle to [0, 2pi).
double reduce_angle(double phi);

/// a0 + sum_m a_m cos(m phi) + b_m sin(m phi), harmonics numbered from 1.
struct TrigPolynomial {
    double constant = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    double value(double phi) const;
    double derivative(double phi) const;
    double second_derivative(double phi) const;
    bool is_constant() const;

    /// {"const": a0, "cos": [...], "sin": [...]}; "const" is optional on input.
    nlohmann::json to_json() const;
    static TrigPolynomial from_json(const nlohmann::json& j);
};

enum class PotentialKind { pendulum, trig_polynomial, zero, custom };

/// A C^2 periodic potential with cached extrema.
///
/// Extrema are found by a 4096-point scan followed by Brent refinement of
/// every local extremum, so `local_extrema()` splits the circle into pieces on
/// which f is monotone.
class Potential {
public:
    static Potential pendulum();
    static Potential zero();
    /// f = sum a_m cos(m phi) + sum b_m sin(m phi).
    static Potential trig(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);
    /// In-process only; not serialisable.
    static Potential custom(std::function<double(double)> f, std::function<double(double)> df,
                            std::function<double(double)> d2f);

    /// {"kind": "pendulum" | "zero" | "trig", "cos": [...], "sin": [...]}.
    static Potential from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    PotentialKind kind() const { return kind_; }
    double eval(double phi) const;
    double eval_deriv(double phi) const;
    double eval_second_deriv(double phi) const;

    double f_min() const { return f_min_; }
    double f_max() const { return f_max_; }
    double argmin() const { return argmin_; }
    double argmax() const { return argmax_; }
    bool is_constant() const { return constant_; }

    /// Locations in [0, 2pi) of every global maximum (within 1e-9 in value).
    std::span<const double> global_maximizers() const { return maximizers_; }
    /// Locations in [0, 2pi) of every local extremum, sorted.
    std::span<const double> local_extrema() const { return extrema_; }

    /// All phi in [0, 2pi) with f(phi) = c, located to 1e-12.
    std::vector<double> level_crossings(double c) const;

    /// Crossings of f = c together with the local extrema, sorted. These are
    /// the points where integrands built on the level c may lose smoothness.
    std::vector<double> breakpoints(double c) const;

    const TrigPolynomial& coefficients() const { return poly_; }

private:
    Potential(PotentialKind kind, TrigPolynomial poly);
    static Potential parse_potential(const nlohmann::json& j);
    void locate_extrema();

    PotentialKind kind_;
    TrigPolynomial poly_;
    std::function<double(double)> f_, df_, d2f_;
    double f_min_ = 0.0, f_max_ = 0.0, argmin_ = 0.0, argmax_ = 0.0;
    bool constant_ = false;
    std::vector<double> maximizers_;
    std::vector<double> extrema_;
};

}  // namespace weakkam
