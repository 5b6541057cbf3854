#include "rips/error.hpp"

namespace rips {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kAmbiguousDistance: return "AmbiguousDistance";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kFaceNotPresent: return "FaceNotPresent";
    case ErrorKind::kUnknownVertex: return "UnknownVertex";
    case ErrorKind::kPolicyViolation: return "PolicyViolation";
    case ErrorKind::kDimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::kInvalidBasis: return "InvalidBasis";
    case ErrorKind::kNotASubcomplex: return "NotASubcomplex";
    case ErrorKind::kNotTwoClique: return "NotTwoClique";
    case ErrorKind::kMarginViolation: return "MarginViolation";
    case ErrorKind::kEdgeSetMismatch: return "EdgeSetMismatch";
    case ErrorKind::kNotAP3Free: return "NotAP3Free";
    case ErrorKind::kCapExceeded: return "CapExceeded";
    case ErrorKind::kPreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::kClusterTooLoose: return "ClusterTooLoose";
  }
  return "Unknown";
}

}  // namespace rips
