#pragma once

#include <stdexcept>
#include <string>

namespace abw {

// Failure categories surfaced across the library and mirrored by the C API
// status codes.
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonSymmetric,
  IndefiniteInput,
  RankExceeded,
  IndexOutOfRange,
  NotPsd,
  DimensionNotMultiple,
  NonPositiveSigma,
  DimensionNotScalar,
  TooManyProcesses,
  SingularInput,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace abw
