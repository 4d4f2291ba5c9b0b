#pragma once

#include <stdexcept>
#include <string>

namespace pnorm {

/// Raised for invalid input: bad parameters, malformed files, unsupported fields.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internal invariant fails (a result that the theory rules out).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace pnorm
