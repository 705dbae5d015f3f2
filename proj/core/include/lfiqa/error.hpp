#pragma once

#include <stdexcept>
#include <string>

namespace lfiqa {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem or decoding failure (missing view, unreadable PNG, ...).
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed manifest, CSV, sidecar or model document.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented precondition (shape mismatch, too few samples, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// A numerical routine could not produce a result.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace lfiqa
