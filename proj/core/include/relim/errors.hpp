#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed problem text or configuration. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A violated precondition. The message names the failing inequality.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

struct SearchStats {
  std::size_t candidates = 0;
  std::size_t search_nodes = 0;
  std::size_t good_configs = 0;
  std::size_t maximal_configs = 0;
  std::size_t set_labels = 0;
  double seconds = 0.0;
};

/// An enumeration exceeded its configured cap. Carries the partial statistics.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& message, SearchStats stats)
      : Error(message), stats_(stats) {}

  const SearchStats& stats() const noexcept { return stats_; }

 private:
  SearchStats stats_;
};

class CancelledError : public Error {
 public:
  CancelledError() : Error("operation cancelled") {}
};

}  // namespace relim
