#pragma once

#include <stdexcept>
#include <string>

namespace dispersion {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input violates a documented precondition (bad instance, bad argument).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A solver could not produce a trustworthy answer (LP infeasible, iteration limit, ...).
class SolverError : public Error {
public:
    using Error::Error;
};

/// Reading, writing or parsing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dispersion
