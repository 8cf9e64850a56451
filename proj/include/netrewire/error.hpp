#pragma once

#include <stdexcept>
#include <string>

namespace netrewire {

// Invalid parameters or configuration (CLI exit code 1).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Unreadable or malformed input, or a graph that violates a precondition
// (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DisconnectedGraphError : public DataError {
public:
    DisconnectedGraphError() : DataError("graph is not connected") {}
    explicit DisconnectedGraphError(const std::string& what) : DataError(what) {}
};

// Numerical failure: undefined quantities, non-convergence (CLI exit code 3).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UndefinedCorrelationError : public NumericError {
public:
    using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, double residual)
        : NumericError(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace netrewire
