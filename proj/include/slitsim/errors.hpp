#pragma once

#include <stdexcept>
#include <string>

namespace slitsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameters or configuration files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Incompatible objects handed to an operation (grid mismatch, missing mirror
// column, border row where an interior row is required).
class StructureError : public Error {
 public:
  using Error::Error;
};

// Numerical failure at run time: norm drift past the abort threshold,
// non-finite values in the field.
class NumericsError : public Error {
 public:
  using Error::Error;
};

}  // namespace slitsim
