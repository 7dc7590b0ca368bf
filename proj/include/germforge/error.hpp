#pragma once

#include <stdexcept>
#include <string>

namespace germforge {

enum class ErrorKind {
  dimension,
  precision,
  reality,
  parse,
  constant_curve,
  not_regular,
  invalid_input,
  improper_ideal,
  degenerate,
};

const char* to_string(ErrorKind kind);

/// Base exception for every recoverable failure in the library. The kind
/// lets the CLI map failures to stage tags and exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace germforge
