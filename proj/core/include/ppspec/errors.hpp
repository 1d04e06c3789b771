#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppspec {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

class DegenerateChannel : public Error {
public:
    using Error::Error;
};

class InvalidModel : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// Failures of the numerical contract (as opposed to bad input shape or syntax).
class NumericalError : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NotStationary : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace ppspec
