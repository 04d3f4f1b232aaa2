#pragma once

#include <stdexcept>
#include <string>

namespace voxql {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two point sets (or a set and a relation) live over different universes.
class UniverseMismatch : public Error {
 public:
  using Error::Error;
};

// A named resource (dataset, case, workspace, run, layer, atom) does not exist.
class NotFound : public Error {
 public:
  using Error::Error;
};

// Caller-supplied data violates a documented contract (schema, path rules, sizes).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A file could not be decoded (bad magic, truncated payload, unsupported type).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure while reading or writing persisted state.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace voxql
