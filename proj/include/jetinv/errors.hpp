#pragma once

#include <stdexcept>
#include <string>

namespace jetinv {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Expression syntax errors, with a byte offset into the input.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

// Structural misuse: mismatched variable sets, bad argument shapes.
struct VarMismatchError : Error {
    using Error::Error;
};

// Mathematical precondition failures; `which` names the violated hypothesis.
struct MathError : Error {
    MathError(const std::string& which, const std::string& what)
        : Error(which + ": " + what), which(which) {}
    std::string which;
};

struct NonUnitDivisorError : MathError {
    explicit NonUnitDivisorError(const std::string& what = "constant term of divisor is zero or below tolerance")
        : MathError("non-unit-divisor", what) {}
};

struct DomainError : MathError {
    explicit DomainError(const std::string& what)
        : MathError("analyticity-domain", what) {}
};

// Exact backend asked to produce an irrational value.
struct NeedsFloatError : MathError {
    explicit NeedsFloatError(const std::string& what)
        : MathError("needs-float-backend", what) {}
};

struct PreconditionError : MathError {
    using MathError::MathError;
};

}  // namespace jetinv
