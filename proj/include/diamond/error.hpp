#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diamond {

enum class ErrorCode {
  NonIntegerKnot,
  NonIntegerCoefficient,
  MalformedKnots,
  NegativeCoefficient,
  NonPositiveFirstSlope,
  DiscontinuousAtKnot,
  EmptyParallel,
  OutOfRange,
  IntegerOverflow,
  EmptyCounts,
  InvalidHeights,
  OutOfPiece,
  DuplicatePoints,
  NotSymmetric,
  NotOptimalHeights,
  QuadratureFailure,
  InvalidArgument,
  BadSpec,
  IoError,
  MalformedCsv,
  NonUnitPoint,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace diamond
