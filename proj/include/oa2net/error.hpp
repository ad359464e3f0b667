#pragma once

#include <stdexcept>
#include <string>

namespace oa2net {

enum class ErrorKind {
  InvalidArgument,
  InvalidNode,
  Precondition,
  Io,
  Parse,
  Transport,
  Domain,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type thrown by the core library. The kind drives the
/// C API status code and the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace oa2net
