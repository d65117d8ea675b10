#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pentail {

/// A caller broke a documented precondition (mismatched universes, wrong
/// premise count for a specialised decider, malformed LP dimensions).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numeric argument lies outside its admissible range, e.g. gamma not in [0,1].
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The instance is too large for exhaustive subset enumeration.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pentail
