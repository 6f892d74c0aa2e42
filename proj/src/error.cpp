#include "errscope/error.hpp"

namespace errscope {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonNumeric: return "NonNumeric";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DuplicateModelName: return "DuplicateModelName";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::ConstantTarget: return "ConstantTarget";
    case ErrorKind::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorKind::NonPositiveDefinite: return "NonPositiveDefinite";
    case ErrorKind::MissingLayerInput: return "MissingLayerInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace errscope
