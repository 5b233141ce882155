#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sa {

/// Base class for failures of the numerical pipeline.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A term produced NaN or Inf; the message names the term.
class NonFiniteError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSystemError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The closed-form square root would be taken of a negative number.
class UnphysicalStateError : public NumericalError {
public:
    UnphysicalStateError(const std::string& what, std::size_t node)
        : NumericalError(what), node_(node) {}
    [[nodiscard]] std::size_t node() const { return node_; }

private:
    std::size_t node_;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : NumericalError(what), last_residual_(last_residual) {}
    [[nodiscard]] double last_residual() const { return last_residual_; }

private:
    double last_residual_;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace sa
