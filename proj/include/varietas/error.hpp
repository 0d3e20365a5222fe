#pragma once

#include <stdexcept>
#include <string>

namespace varietas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A word, context or homomorphism refers to letters outside the declared alphabet.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// A table, partition or other finite structure is malformed.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A construction would exceed a configured size bound.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A precondition on the algebraic input does not hold (non-congruence, non-monotone map, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace varietas
