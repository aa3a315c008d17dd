#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ldlab {

// Base for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (presentation files, tables, CLI arguments).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Input that parses but does not describe a valid object: a non-local ring,
// a non-associative table, mismatched dimensions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A desk-scale guard tripped (Buchberger pair limit, expanded matrix size).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// A request outside what has been computed, e.g. an index past the horizon.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Seeing one of these means a bug
// upstream, not bad input.
class LogicFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ldlab
