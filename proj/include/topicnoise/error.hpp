#pragma once

#include <stdexcept>
#include <string>

namespace topicnoise {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is missing, unreadable, malformed or empty.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Two operands that must agree in shape do not (topic counts, matrix sizes).
class DimensionMismatch : public DataError {
 public:
  using DataError::DataError;
};

/// A configuration value or key is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace topicnoise
