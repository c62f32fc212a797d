#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opframe {

enum class ErrorCode {
  InvalidDimension,
  InvalidArgument,
  DomainViolation,
  EmptySpan,
  DegenerateSequence,
  NotAFrame,
  InvalidIndex,
  GridTooCoarse,
  GridMismatch,
  WindowOverflow,
  InvalidProbe,
  DegenerateOperator,
  RangeNotIncluded,
  FactorizationFailed,
  NotSurjective,
  NotBiorthogonal,
};

std::string_view to_string(ErrorCode code);

class FrameError : public std::runtime_error {
 public:
  FrameError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw FrameError(code, what); }

}  // namespace opframe
