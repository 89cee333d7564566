#pragma once

#include <stdexcept>
#include <string>

namespace polywitt {

enum class ErrorCode {
  // rings
  NonAssociative,
  NonCommutative,
  NoUnit,
  BadModulus,
  OwnerMismatch,
  NotDivisible,
  ZeroDivisorDenominator,
  Unknown,
  Unsupported,
  MalformedInput,
  BadInvolution,
  // polymap / divided powers
  NotHomogeneous,
  NonInvertibleFactorial,
  DegreeViolation,
  RelationViolation,
  // witt
  NotInGhostImage,
  UnsupportedIndex,
  BadFrobeniusLift,
  BadTruncation,
  // burnside
  GroupTooLarge,
  NotASubgroup,
  IndexTooLarge,
  InterpolationNonIntegral,
  TooManyClasses,
  // tambara
  TorsionBase,
  NotSolvable,
  NotCohomological,
  NotEquivariant,
  NotCompatible,
  InvariantViolation,
  Internal,
  // cli
  UnknownScenario,
};

const char* error_name(ErrorCode code);

class AlgebraError : public std::runtime_error {
 public:
  AlgebraError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polywitt
