#pragma once

#include <stdexcept>
#include <string>

namespace weakkam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input that is valid but degenerate for the requested quantity
/// (e.g. a constant potential where a strictly positive constant is needed).
class DegenerateInputError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Root bracket does not straddle the target value.
class BracketError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure ran out of budget before meeting its tolerance.
/// Carries the best estimate reached and its error bound.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_bound)
        : Error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

/// Runs f, prefixing `what` to the message of any AccuracyError it raises so
/// the failing integral or root is named.
template <class F>
auto annotate(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const AccuracyError& e) {
        throw AccuracyError(what + ": " + e.what(), e.best_estimate(), e.error_bound());
    }
}

}  // namespace weakkam
