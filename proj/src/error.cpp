#include "diamond/error.hpp"

namespace diamond {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIntegerKnot: return "NonIntegerKnot";
    case ErrorCode::NonIntegerCoefficient: return "NonIntegerCoefficient";
    case ErrorCode::MalformedKnots: return "MalformedKnots";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::NonPositiveFirstSlope: return "NonPositiveFirstSlope";
    case ErrorCode::DiscontinuousAtKnot: return "DiscontinuousAtKnot";
    case ErrorCode::EmptyParallel: return "EmptyParallel";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::IntegerOverflow: return "IntegerOverflow";
    case ErrorCode::EmptyCounts: return "EmptyCounts";
    case ErrorCode::InvalidHeights: return "InvalidHeights";
    case ErrorCode::OutOfPiece: return "OutOfPiece";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotOptimalHeights: return "NotOptimalHeights";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::NonUnitPoint: return "NonUnitPoint";
  }
  return "Unknown";
}

}  // namespace diamond
