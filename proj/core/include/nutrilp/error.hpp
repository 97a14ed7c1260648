#pragma once

#include <stdexcept>
#include <string>

namespace nutrilp {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied data: bad CSV cell, unknown food id, violated
/// construction invariant.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace nutrilp
