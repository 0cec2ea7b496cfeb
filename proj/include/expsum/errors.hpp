#pragma once

#include <stdexcept>
#include <string>

namespace expsum {

enum class ErrorCode {
  NotPrime,
  TooLarge,
  IndexNotDividing,
  ZeroArgument,
  ZeroElement,
  EmptySupport,
  EmptySegment,
  ModulusMismatch,
  BoundaryAmbiguity,
  LoopCapExceeded,
  EtaTooSmall,
  InequalityViolated,
  ExtractionFailed,
  HypothesesFail,
  HypothesesEffectivelyEmpty,
  StageViolation,
  InvalidInstance,
  InvalidArgument,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception: every spec'd error condition carries one ErrorCode.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace expsum
