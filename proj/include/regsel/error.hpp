#pragma once

#include <stdexcept>
#include <string>

namespace regsel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed delimiter-separated input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input data that cannot be turned into a usable Dataset.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver / run parameters (k out of range, bad alpha, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Not enough observations for the requested model size.
class DegreesOfFreedomError : public Error {
 public:
  using Error::Error;
};

/// A statistical test could not be evaluated (e.g. rank-deficient design).
class DiagnosticsError : public Error {
 public:
  using Error::Error;
};

}  // namespace regsel
