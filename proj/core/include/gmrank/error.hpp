#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmrank {

/// Base class for recoverable input errors (bad files, bad annotations).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed edge-list, label or vector file. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates a domain rule (unknown culture, rank gap, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Too few usable points for a fit.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Caller broke a precondition (dimension mismatch, bad parameter range).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace gmrank
