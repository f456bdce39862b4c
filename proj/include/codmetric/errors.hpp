#pragma once

#include <stdexcept>
#include <string>

namespace codmetric {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (rational strings, JSON payloads, sequence specs).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Two operands live over different ambient spaces.
class SpaceMismatchError : public Error {
public:
    using Error::Error;
};

/// Evaluation or restriction outside the domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A stated precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Inversion requested for a map that is not injective. Carries a witness
/// pair of distinct points with equal values, rendered into the message.
class InjectivityError : public Error {
public:
    InjectivityError(const std::string& msg, std::string witness_a, std::string witness_b)
        : Error(msg), witness_a_(std::move(witness_a)), witness_b_(std::move(witness_b)) {}
    const std::string& witness_a() const { return witness_a_; }
    const std::string& witness_b() const { return witness_b_; }

private:
    std::string witness_a_, witness_b_;
};

/// Join of maps that disagree on a domain overlap. Carries a witness point.
class IncompatibilityError : public Error {
public:
    IncompatibilityError(const std::string& msg, std::string witness)
        : Error(msg), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// A value cannot be represented in the pinned encodings (e.g. a map whose
/// image fails to be relatively open where an open image is required).
class RepresentationError : public Error {
public:
    using Error::Error;
};

/// A bounded scan ended without an answer. Reported, never interpreted as
/// nonexistence.
class SearchExhaustedError : public Error {
public:
    using Error::Error;
};

} // namespace codmetric
