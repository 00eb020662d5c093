#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmonty {

enum class ErrorKind {
  Size,        // register size out of range
  Validation,  // malformed gate, circuit or argument
  Capacity,    // not enough ancillas / too many qubits for the dense oracle
  Invariant,   // internal invariant broken (impossible branch sampled, ...)
  Rule,        // Monty Hall rule violation (choosing the opened door)
  State,       // game action issued in the wrong phase
  Parse,       // malformed text input
  NotFound,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Size: return "size";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Invariant: return "invariant";
    case ErrorKind::Rule: return "rule_violation";
    case ErrorKind::State: return "state";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::NotFound: return "not_found";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying the byte offset (or line number for line-oriented
/// input) where it was detected.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Parse,
              what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qmonty
