#include "alsel/error.hpp"

namespace alsel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::ZeroNormVector: return "ZeroNormVector";
    case ErrorCode::PoolTooSmall: return "PoolTooSmall";
    case ErrorCode::BudgetExceedsPool: return "BudgetExceedsPool";
    case ErrorCode::NoEligibleSeed: return "NoEligibleSeed";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::InvalidBox: return "InvalidBox";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ClusterPackingFailed: return "ClusterPackingFailed";
    case ErrorCode::ManifestParse: return "ManifestParse";
    case ErrorCode::BlobSizeMismatch: return "BlobSizeMismatch";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace alsel
