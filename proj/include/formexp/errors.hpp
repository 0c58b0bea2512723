#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace formexp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A result would exceed the chart's truncation. Never silently dropped.
class TruncationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation needs a property the input lacks, e.g. a torsion-free connection.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ChartMismatch : public std::invalid_argument {
 public:
  ChartMismatch() : std::invalid_argument("operands live on different charts") {}
};

// Malformed or inconsistent chart file; `line` is 1-based, 0 when not tied to a line.
class ChartFileError : public std::runtime_error {
 public:
  ChartFileError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? what + " at line " + std::to_string(line) : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace formexp
