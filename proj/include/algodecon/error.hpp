#pragma once

#include <stdexcept>
#include <string>

namespace algodecon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments or violated preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data (objects, graphs, grids, CSV).
class DataError : public Error {
 public:
  using Error::Error;
};

/// CTM table problems: malformed files, checksum mismatches, shape mismatches.
class TableError : public Error {
 public:
  using Error::Error;
};

/// A machine class does not fit in the 64-bit machine index.
class CapacityError : public TableError {
 public:
  using TableError::TableError;
};

}  // namespace algodecon
