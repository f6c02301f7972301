#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vasreach {

/// Malformed instance or system text. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A component would drop below zero when firing an action.
class NegativeComponent : public std::domain_error {
 public:
  explicit NegativeComponent(std::size_t index)
      : std::domain_error("component " + std::to_string(index + 1) + " becomes negative"),
        index_(index) {}

  /// 0-based index of the offending component.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A configurable search budget was exceeded. Never a verdict.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// No bounded component could be certified for an unpumpable marked graph.
class CertificateNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vasreach
