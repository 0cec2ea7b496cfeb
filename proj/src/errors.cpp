#include "expsum/errors.hpp"

namespace expsum {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IndexNotDividing: return "IndexNotDividing";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::EmptySegment: return "EmptySegment";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::BoundaryAmbiguity: return "BoundaryAmbiguity";
    case ErrorCode::LoopCapExceeded: return "LoopCapExceeded";
    case ErrorCode::EtaTooSmall: return "EtaTooSmall";
    case ErrorCode::InequalityViolated: return "InequalityViolated";
    case ErrorCode::ExtractionFailed: return "ExtractionFailed";
    case ErrorCode::HypothesesFail: return "HypothesesFail";
    case ErrorCode::HypothesesEffectivelyEmpty:
      return "HypothesesEffectivelyEmpty";
    case ErrorCode::StageViolation: return "StageViolation";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace expsum
