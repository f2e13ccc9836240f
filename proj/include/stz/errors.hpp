#pragma once

#include <stdexcept>
#include <string>

namespace stz {

/// Argument outside the region where an operation is defined.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Argument sits on a pole or zero of the function being evaluated.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Malformed text input (polynomial syntax, spectrum files).
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

}  // namespace stz
