#pragma once

#include <stdexcept>
#include <string>

namespace netcas {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-facing configuration: scenario values, CLI arguments, workload keys.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable documents (JSON, CSV) and filesystem failures.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Profile-specific failures: empty profile, version mismatch, zero-throughput point.
class ProfileError : public Error {
 public:
  using Error::Error;
};

// API misuse detected at runtime (e.g. scoring before any baseline sample).
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace netcas
