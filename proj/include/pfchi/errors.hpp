#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfchi {

// Base of every error thrown by the library. The four branches below line up
// with the CLI exit codes: parse (1), evaluation (2), resource (3),
// verification (4).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- input / parse errors ---------------------------------------------------

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    // for malformed input without a meaningful offset (file-level problems)
    explicit ParseError(const std::string& msg) : Error(msg), position(0) {}
};

// malformed or unknown sort annotation in a formula
struct SortError : ParseError {
    using ParseError::ParseError;
};

// --- evaluation errors -------------------------------------------------------

struct EvalError : Error {
    using Error::Error;
};

struct UnboundVariable : EvalError {
    using EvalError::EvalError;
};

// K_m requested with m not dividing the tower degree
struct SortNotInTower : EvalError {
    using EvalError::EvalError;
};

struct SingularCurve : EvalError {
    using EvalError::EvalError;
};

struct DomainError : EvalError {
    using EvalError::EvalError;
};

// --- resource errors ---------------------------------------------------------

struct ResourceError : Error {
    using Error::Error;
};

// enumeration or search would exceed the configured bound
struct TooLarge : ResourceError {
    using ResourceError::ResourceError;
};

// --- verification errors -----------------------------------------------------

struct VerificationError : Error {
    using Error::Error;
};

struct InconsistentCounts : VerificationError {
    using VerificationError::VerificationError;
};

struct NoRecurrence : VerificationError {
    using VerificationError::VerificationError;
};

struct ValidationFailure : VerificationError {
    using VerificationError::VerificationError;
};

struct StabilizationFailure : VerificationError {
    using VerificationError::VerificationError;
};

struct NonUnitRoot : VerificationError {
    using VerificationError::VerificationError;
};

struct NotRepresentable : VerificationError {
    using VerificationError::VerificationError;
};

struct SingularSystem : VerificationError {
    using VerificationError::VerificationError;
};

// --- caller mistakes ----------------------------------------------------------

struct PreconditionError : Error {
    using Error::Error;
};

struct NotPrime : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct ZeroPolynomial : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct SupersingularInput : PreconditionError {
    using PreconditionError::PreconditionError;
};

}  // namespace pfchi
