#pragma once
// Exception taxonomy for the heckelab library.
//
// Every failure mode named by a module contract maps onto one class below so
// that callers (and the CLI exit-code mapping) can distinguish "the input is
// invalid" from "the requested computation exceeds the configured budget or
// the available precision".

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heckelab {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text; carries the 1-based line number when one is known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

// Structurally well-formed input that violates a domain invariant
// (duplicate prime labels, out-of-bound normalized coefficients, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// A Sato-Tate angle of 0 or pi (|c(p)| = 2): the closed form sin((n+1)t)/sin(t)
// is singular there and the library rejects rather than extrapolates.
class SingularAngleError : public DomainError {
public:
    using DomainError::DomainError;
};

// An angle detected as a rational multiple of pi where the construction
// requires an irrational one.
class RationalAngleError : public Error {
public:
    using Error::Error;
};

// An ideal mentions a prime label the coefficient table does not carry.
class UnknownPrimeError : public Error {
public:
    explicit UnknownPrimeError(const std::string& label)
        : Error("unknown prime label '" + label + "'"), label_(label) {}
    UnknownPrimeError(const std::string& label, const std::string& what)
        : Error(what), label_(label) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

// The working precision cannot certify the requested result.  For continued
// fractions, `index` names the first partial quotient (1-based) that is not
// stable under a +-1 ulp perturbation of the input.
class PrecisionError : public Error {
public:
    explicit PrecisionError(const std::string& what, std::size_t index = 0)
        : Error(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_ = 0;
};

// The request exceeds a configured memory/time budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

// An emission-time re-check of an already-constructed result failed.
// Indicates an internal inconsistency, never bad user input.
class VerificationError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure (cannot open/read/write a path).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace heckelab
