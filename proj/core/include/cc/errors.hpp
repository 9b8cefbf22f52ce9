#pragma once

#include <stdexcept>
#include <string>

namespace cc {

/// A numerical failure inside the sampler (non-SPD matrix, non-finite
/// density). `iteration` is -1 when the failure is not tied to a sweep.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, long iteration = -1)
      : std::runtime_error(what), iteration_(iteration) {}
  long iteration() const { return iteration_; }

 private:
  long iteration_;
};

/// Malformed input file; `line` is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cc
