#pragma once

#include <stdexcept>
#include <string>

namespace bbring {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid ring description; the message names the offending field.
class SpecError : public Error {
public:
    using Error::Error;
};

/// A bit string outside the image of the element encoding.
class InvalidCodeError : public Error {
public:
    using Error::Error;
};

/// Brute-force enumeration refused because the ring exceeds the desk-scale cap.
class CapExceededError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Element is not in the ideal or subgroup it was asked about.
class MembershipError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Products of basis elements escaped the span the basis was meant to close.
class ClosureError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// A hiding function or homomorphism oracle broke its contract.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// A sampled quantum subroutine exhausted its retry budget.
class ProviderFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace bbring
