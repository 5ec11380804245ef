#pragma once

#include <stdexcept>
#include <string>

namespace wlsim {

/// Bad argument to a library call (out-of-range node, mismatched sizes, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed graph or label file. Carries the offending 1-based line.
class IngestionError : public std::runtime_error {
 public:
  IngestionError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A computation would exceed a configured size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wlsim
