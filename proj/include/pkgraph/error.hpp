#pragma once

#include <stdexcept>
#include <string>

namespace pkgraph {

// Invalid configuration values (rates outside [0,1], unknown facet names...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that violates a documented format or domain rule.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke an operation's precondition (shape mismatch, unlabeled record).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN or Inf surfaced in a model computation. The tag names the layer.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& tag, const std::string& what)
      : std::runtime_error(tag + ": " + what), tag_(tag) {}
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

}  // namespace pkgraph
