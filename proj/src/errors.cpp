#include "polywitt/errors.hpp"

namespace polywitt {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::NonCommutative: return "NonCommutative";
    case ErrorCode::NoUnit: return "NoUnit";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::OwnerMismatch: return "OwnerMismatch";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ZeroDivisorDenominator: return "ZeroDivisorDenominator";
    case ErrorCode::Unknown: return "Unknown";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::BadInvolution: return "BadInvolution";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NonInvertibleFactorial: return "NonInvertibleFactorial";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::NotInGhostImage: return "NotInGhostImage";
    case ErrorCode::UnsupportedIndex: return "UnsupportedIndex";
    case ErrorCode::BadFrobeniusLift: return "BadFrobeniusLift";
    case ErrorCode::BadTruncation: return "BadTruncation";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::IndexTooLarge: return "IndexTooLarge";
    case ErrorCode::InterpolationNonIntegral: return "InterpolationNonIntegral";
    case ErrorCode::TooManyClasses: return "TooManyClasses";
    case ErrorCode::TorsionBase: return "TorsionBase";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::NotCohomological: return "NotCohomological";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::Internal: return "Internal";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
  }
  return "Error";
}

}  // namespace polywitt
