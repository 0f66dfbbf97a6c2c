#pragma once

#include <stdexcept>
#include <string>

namespace ppwalk {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  EmptyPolynomial,
  NonUnitConstantTerm,
  InsufficientPrecision,
  ParityError,
  UnsupportedOperator,
  DependentGenerators,
  ResidualNonzero,
  NoUniqueSlope,
  IrrationalEigenvalue,
  RepeatedRoot,
  CenterOfWeightSpace,
  NotInBoundary,
  NonIntegralIndex,
  NotPotentiallyCrystalline,
  SlopeOutOfRange,
  ConstraintViolated,
  FixtureMismatch,
};

// Coarse grouping used for process exit codes.
enum class ErrorClass { Precondition, Verification, InvariantBreach };

const char* error_name(ErrorCode code);
ErrorClass error_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppwalk
