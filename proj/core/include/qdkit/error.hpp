#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdkit {

/// Base class for all qdkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function was called with arguments violating its preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration is malformed or violates schema invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A scoring function received an input it cannot evaluate.
class ScoringError : public Error {
 public:
  using Error::Error;
};

/// An emitter cannot make progress (e.g. empty repertoire at restart).
class EmitterError : public Error {
 public:
  using Error::Error;
};

/// File-system level failure (open, write, rename).
class IoError : public Error {
 public:
  using Error::Error;
};

/// A file exists but its contents cannot be decoded.
class FileParseError : public Error {
 public:
  FileParseError(const std::string& what, std::size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// An archive file declares a format version this build does not understand.
class FormatVersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdkit
