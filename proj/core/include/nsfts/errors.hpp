#pragma once

#include <stdexcept>
#include <string>

namespace nsfts {

// Base for every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (invalid triangle, short series, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Invalid model or experiment configuration (k < 3, W >= T, unknown method, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Malformed input data: CSV cells, manifests, checkpoints.
class DataError : public Error {
public:
  using Error::Error;
};

}  // namespace nsfts
