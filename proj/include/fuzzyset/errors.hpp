#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzyset {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or sequence text. `offset()` is the byte offset of the problem.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class LevelError : public Error {
 public:
  using Error::Error;
};

class UniverseError : public Error {
 public:
  using Error::Error;
};

class MissingMembership : public Error {
 public:
  using Error::Error;
};

class DuplicateElement : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IndexCapExceeded : public Error {
 public:
  using Error::Error;
};

class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid JSON input or unreadable file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzzyset
