#include "germforge/error.hpp"

namespace germforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::precision: return "precision";
    case ErrorKind::reality: return "reality";
    case ErrorKind::parse: return "parse";
    case ErrorKind::constant_curve: return "constant-curve";
    case ErrorKind::not_regular: return "not-regular";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::improper_ideal: return "improper-ideal";
    case ErrorKind::degenerate: return "degenerate";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

ParseError::ParseError(int line, int column, const std::string& what)
    : Error(ErrorKind::parse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace germforge
