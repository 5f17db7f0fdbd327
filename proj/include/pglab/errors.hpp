#pragma once

#include <stdexcept>
#include <string>

namespace pglab {

// Base class for all pglab errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A model quantity left its valid range (bad bias point, degenerate
// denominator, overflowing exponent, starved cluster, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// No candidate satisfies the active constraints.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& msg) : Error(msg) {}
};

// Malformed input text. line is 1-based; 0 means not line-specific.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace pglab
