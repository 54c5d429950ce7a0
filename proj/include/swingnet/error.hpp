#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swingnet {

/// Input that violates a documented invariant (bad topology, nonpositive
/// parameter, dimension mismatch, malformed scenario field).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Scenario text that is not well-formed. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Iterative eigensolver ran out of sweeps.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A trajectory left the representable range. `step()` is the index of the
/// first sample whose state exceeded the divergence limit.
class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Transfer-matrix evaluation requested too close to a pole.
class PoleProximityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace swingnet
