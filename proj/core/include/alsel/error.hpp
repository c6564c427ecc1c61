#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alsel {

enum class ErrorCode {
  DimensionMismatch,
  EmptyPool,
  DuplicateId,
  NonFiniteValue,
  ZeroNormVector,
  PoolTooSmall,
  BudgetExceedsPool,
  NoEligibleSeed,
  DegeneratePair,
  InvalidBox,
  InvalidArgument,
  ClusterPackingFailed,
  ManifestParse,
  BlobSizeMismatch,
  Io,
};

/// Stable token for an error code, e.g. "BudgetExceedsPool".
std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace alsel
