#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rittlab {

// Machine-readable error kinds. The names are part of the JSON error surface
// of the command line tool, so keep them stable.
enum class ErrorKind {
  ReduciblePolynomial,
  BoxContainsNoRoot,
  BoxContainsMultipleRoots,
  DivisionByZero,
  MixedFields,
  NotIrreduciblePrime,
  UnsupportedShape,
  ZeroFunction,
  FactorSplit,
  DistinctSupports,
  InsufficientInitialData,
  InconsistentInitialData,
  LeadingSingularity,
  CrossCheckMismatch,
  NonUnitConstantTerm,
  DivisionByZeroSeries,
  ZeroOnBoundary,
  MaxDepth,
  CertificationFailed,
  PreconditionViolated,
  SyntaxError,
  ExponentNotAffine,
  UnknownSymbol,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace rittlab
