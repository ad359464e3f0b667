#include "oa2net/error.hpp"

namespace oa2net {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidNode: return "invalid-node";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Transport: return "transport";
    case ErrorKind::Domain: return "domain";
  }
  return "unknown";
}

}  // namespace oa2net
