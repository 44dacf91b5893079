#pragma once

#include <stdexcept>
#include <string>

namespace rsheat {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An adaptive integral ran out of subdivisions before meeting its tolerance.
/// Carries the best partial value and its error estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial_value, double partial_error)
        : std::runtime_error(what), partial_value_(partial_value), partial_error_(partial_error) {}

    double partial_value() const noexcept { return partial_value_; }
    double partial_error() const noexcept { return partial_error_; }

private:
    double partial_value_;
    double partial_error_;
};

/// Least-squares problem with a rank-deficient design.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A refined eigenvalue scan found roots the coarse scan missed.
class CompletenessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// t * lambda_max is too small for the eigenvalue tail to be negligible.
class InsufficientSpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rsheat
