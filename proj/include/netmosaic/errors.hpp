#pragma once

#include <stdexcept>
#include <string>

namespace netmosaic {

// Base of every error the library throws. The CLI maps each subclass onto an
// exit code, so new error kinds must derive from one of the leaves below.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument or configuration outside an operation's precondition.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Input that is well-formed but carries no usable signal (e.g. an all-zero
/// matrix handed to eigenvector centrality).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Malformed data file.
class DataError : public Error {
public:
    using Error::Error;
};

/// Iterative numerical routine failed.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace netmosaic
