#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rips {

enum class ErrorKind {
  kInvalidInput,
  kAmbiguousDistance,
  kDimensionMismatch,
  kBudgetExceeded,
  kFaceNotPresent,
  kUnknownVertex,
  kPolicyViolation,
  kDimensionOutOfRange,
  kInvalidBasis,
  kNotASubcomplex,
  kNotTwoClique,
  kMarginViolation,
  kEdgeSetMismatch,
  kNotAP3Free,
  kCapExceeded,
  kPreconditionUnmet,
  kClusterTooLoose,
};

/// Stable name used in machine-readable error lines, e.g. "AmbiguousDistance".
std::string_view kind_name(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` drives
/// the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rips
