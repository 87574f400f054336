#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphlift {

/// Input data could not be parsed or does not form a usable graph.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure carrying the 1-based line number of the offending input line.
class ParseError : public DataError {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : DataError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Edge list was empty after dropping self-loops and duplicates.
class EmptyGraphError : public DataError {
 public:
  using DataError::DataError;
};

/// Requested computation exceeds a feasibility guard (enumeration cap,
/// query budget smaller than one sample, k larger than the graph, ...).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphlift
