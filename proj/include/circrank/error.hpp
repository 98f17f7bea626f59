#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circrank {

enum class ErrorKind {
  InvalidOrder,
  InvalidLoop,
  UnsupportedFamily,
  ParityUnsupported,
  NotNonnegative,
  InvalidArgument,
  DimensionMismatch,
  ConstructionFailed,
  CapExceeded,
  Parse,
  Internal,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidOrder: return "invalid-order";
    case ErrorKind::InvalidLoop: return "invalid-loop";
    case ErrorKind::UnsupportedFamily: return "unsupported-family";
    case ErrorKind::ParityUnsupported: return "parity-unsupported";
    case ErrorKind::NotNonnegative: return "not-nonnegative";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::ConstructionFailed: return "construction-failed";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Internal: return "internal-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace circrank
