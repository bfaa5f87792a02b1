#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fxmst {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed input (bad row, bad header, bad number). Carries a 1-based
/// line number when the offending location is known, 0 otherwise.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A currency code that is not present in the panel or group table.
class UnknownCurrencyError : public Error {
public:
    using Error::Error;
};

/// Not enough observations, rows or columns to carry out an operation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A configuration or model object violates its own invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical procedure failed to converge. Carries the final
/// residual (e.g. the largest off-diagonal magnitude of an eigensolver).
class NumericalError : public Error {
public:
    NumericalError(const std::string& message, double residual)
        : Error(message), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A least-squares fit cannot be performed on the given support.
class FitError : public Error {
public:
    using Error::Error;
};

} // namespace fxmst
