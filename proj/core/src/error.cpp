#include "fairrank/error.hpp"

namespace fairrank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLoopArc: return "LoopArc";
    case ErrorCode::kDuplicateOrConflict: return "DuplicateOrConflict";
    case ErrorCode::kMissingPair: return "MissingPair";
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kResourceLimit: return "ResourceLimit";
    case ErrorCode::kDomainMismatch: return "DomainMismatch";
    case ErrorCode::kZeroNormalizer: return "ZeroNormalizer";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fairrank
