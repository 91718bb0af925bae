#pragma once

#include <stdexcept>
#include <string>

namespace lcp {

// Error classes surfaced by the library. The numeric values are shared with
// the C API status codes in lcp.h.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kResource = 2,
  kFormat = 3,
  kConfig = 4,
  kData = 5,
  kInconsistentCounts = 6,
  kTraining = 7,
  kUndefinedCorrelation = 8,
  kInternal = 9,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace lcp
