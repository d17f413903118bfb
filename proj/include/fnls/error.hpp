#pragma once

#include <stdexcept>
#include <string>

namespace fnls {

/// Base class for all library errors that are not plain precondition
/// violations (those use std::invalid_argument).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a semigroup is asked to run backwards in time.
class IrreversibleTimeError : public Error {
 public:
  using Error::Error;
};

/// Raised by refinement loops that fail to settle within their budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Configuration problems. Syntax errors carry a 1-based line/column,
/// semantic errors carry the offending key path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string key, int line = 0, int column = 0)
      : Error(what), key_(std::move(key)), line_(line), column_(column) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string key_;
  int line_;
  int column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fnls
