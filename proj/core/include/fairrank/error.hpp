#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairrank {

enum class ErrorCode {
  kLoopArc,
  kDuplicateOrConflict,
  kMissingPair,
  kUnknownVertex,
  kSyntaxError,
  kResourceLimit,
  kDomainMismatch,
  kZeroNormalizer,
  kNoConvergence,
  kNotStronglyConnected,
  kVerificationFailed,
  kEmptyClass,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fairrank
