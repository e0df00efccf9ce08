#pragma once

#include <stdexcept>
#include <string>

namespace rpair {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates a documented precondition (kappa > 0, n < 2, p <= 1, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A function was evaluated outside its mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation hit a pole (t = 0 for ct, J_nu vanishing in a ratio, ...).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Arguments outside the supported accuracy box of a special function.
class UnsupportedRange : public Error {
public:
    using Error::Error;
};

/// An iterative method (series, root finder, quadrature, eigen solver) did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class UnboundParameter : public Error {
public:
    explicit UnboundParameter(const std::string& name)
        : Error("unbound parameter '" + name + "'"), name_(name) {}

    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A derivative was requested through a construct that has no derivative rule.
class UnsupportedDerivative : public Error {
public:
    using Error::Error;
};

}  // namespace rpair
