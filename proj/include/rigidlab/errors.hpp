#pragma once

#include <stdexcept>
#include <string>

namespace rigidlab {

// Bad arguments: malformed graphs, non-finite entries, indices out of range.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arguments outside the domain where a formula is defined (e.g. n < 2d for
// the complete-graph bounds).
class OutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A derived quantity disagrees with its closed form. Signals a tolerance
// problem or a bug, never bad user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Text/CSV input that cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace rigidlab
