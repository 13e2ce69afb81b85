#pragma once

#include <stdexcept>
#include <string>

namespace liefact {

// Base type for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Evaluation left the real domain: negative base under a fractional power,
// a pole, or a point outside a solution's validity interval.
class DomainError : public Error {
public:
    using Error::Error;
};

// A parameter violates a documented precondition (zero fitting constant,
// mu <= 0, malformed polynomial text, ...).
class InvalidParamError : public Error {
public:
    using Error::Error;
};

// The fitting quadratic has no real roots.
class ComplexRootsError : public Error {
public:
    using Error::Error;
};

// B^2 - 4AC <= 0: the cubic force does not factor over the reals.
class DiscriminantError : public Error {
public:
    using Error::Error;
};

// An integrated trajectory escaped past the magnitude guard.
class BlowUpError : public Error {
public:
    using Error::Error;
};

// A value lies outside the image of a monotone relation.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

// A bracket expected to be strictly monotone is not.
class NonMonotonicError : public Error {
public:
    using Error::Error;
};

}  // namespace liefact
