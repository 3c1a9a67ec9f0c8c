#pragma once

#include <stdexcept>
#include <string>

namespace hwl {

/// Bad user input or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Insufficient q-expansion precision, exhausted working precision, or a
/// Bessel evaluation outside its supported regime (CLI exit code 3).
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A certified tail bound could not be brought under the requested tolerance
/// (CLI exit code 3).
class ToleranceError : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

/// Malformed input files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hwl
