#pragma once

#include <stdexcept>
#include <string>

namespace qconv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape or data-length mismatch between tensors, weights and layer specs.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Element access outside a tensor's extent.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Invalid layer configuration (divisibility, kernel parity, negative output shift, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input outside a function's mathematical domain (empty or non-finite data).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Caller broke an API contract, e.g. asked for more than two im2col patches.
class ContractError : public Error {
public:
    using Error::Error;
};

/// The requested kernel path does not exist for this primitive.
class UnsupportedPathError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace qconv
