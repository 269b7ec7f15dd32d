#include "weakkam/lambert.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "weakkam/errors.hpp"

namespace weakkam::lambert {
namespace {

constexpr double kStepTol = 1e-15;
constexpr int kMaxIter = 50;

[[noreturn]] void fail_convergence(const char* what, double arg, double w) {
    throw AccuracyError(std::string(what) + ": no convergence for argument " + std::to_string(arg), w,
                        std::abs(w) * 1e-12);
}

// Halley iteration on w e^w - z; intended for 0 < z <= e.
double solve_direct(double z) {
    double w;
    if (z < 0.25) {
        w = z - z * z;
    } else {
        // Winitzki's approximation, within ~1% on [0.25, e].
        const double l = std::log1p(z);
        w = l * (1.0 - std::log1p(l) / (2.0 + l));
    }
    for (int it = 0; it < kMaxIter; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        if (f == 0.0) return w;
        const double wp1 = w + 1.0;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= kStepTol * w) return w;
    }
    fail_convergence("w_principal", z, w);
}

// Halley iteration on w + ln w - y; intended for y >= 1.
double solve_log(double y) {
    const double ly = std::log(y);
    double w = y >= 30.0 ? y - ly : y - ly + ly / y;
    for (int it = 0; it < kMaxIter; ++it) {
        const double g = w + std::log(w) - y;
        if (g == 0.0) return w;
        const double g1 = 1.0 + 1.0 / w;
        const double g2 = -1.0 / (w * w);
        const double step = g / (g1 - 0.5 * g * g2 / g1);
        w -= step;
        if (std::abs(step) <= kStepTol * w) return w;
    }
    fail_convergence("w_log", y, w);
}

}  // namespace

double w_principal(double z) {
    if (!std::isfinite(z) || z < 0.0) {
        throw DomainError("w_principal: argument must be finite and nonnegative, got " + std::to_string(z));
    }
    if (z == 0.0) return 0.0;
    if (z <= std::numbers::e) return solve_direct(z);
    return solve_log(std::log(z));
}

double w_log(double y) {
    if (!std::isfinite(y)) throw DomainError("w_log: argument must be finite");
    if (y <= -30.0) return std::exp(y);
    if (y < 1.0) return solve_direct(std::exp(y));
    return solve_log(y);
}

double log_w_log(double y) {
    const double w = w_log(y);
    // y - w cancels for large y; ln w is only unusable once w is subnormal.
    return w >= std::numeric_limits<double>::min() ? std::log(w) : y - w;
}

double w_prime(double z) {
    if (!std::isfinite(z) || z <= 0.0) {
        throw DomainError("w_prime: argument must be finite and positive, got " + std::to_string(z));
    }
    const double w = w_principal(z);
    // For z > 1 use e^W = z / W to stay clear of overflow.
    if (z <= 1.0) return 1.0 / ((1.0 + w) * std::exp(w));
    return w / (z * (1.0 + w));
}

}  // namespace weakkam::lambert
