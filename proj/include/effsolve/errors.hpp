#pragma once

#include <stdexcept>
#include <string>

namespace effsolve {

// Base class for all precondition violations raised by the library.
// Outcome-style failures (unsatisfiable CSP, exhausted budget) are returned
// as values, not thrown.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateIdError : public Error {
public:
    using Error::Error;
};

class UnknownConceptError : public Error {
public:
    using Error::Error;
};

class SelfLoopError : public Error {
public:
    using Error::Error;
};

class NonPositiveCostError : public Error {
public:
    using Error::Error;
};

class TooManyCandidatesError : public Error {
public:
    using Error::Error;
};

class DepthExceededError : public Error {
public:
    using Error::Error;
};

class TooLargeError : public Error {
public:
    using Error::Error;
};

// Bad files, malformed JSON, out-of-range config values.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace effsolve
