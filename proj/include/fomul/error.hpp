#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fomul {

/// Invalid grid, geometry or device parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A metric is undefined for its inputs (e.g. a constant image in xcorr).
class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedModulus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DetectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or static-check failure in an instruction file; carries the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Failure while executing an instruction; carries the 1-based step.
class ExecutionError : public std::runtime_error {
 public:
  ExecutionError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace fomul
