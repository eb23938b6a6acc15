#include "rittlab/error.hpp"

namespace rittlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::BoxContainsNoRoot: return "BoxContainsNoRoot";
    case ErrorKind::BoxContainsMultipleRoots: return "BoxContainsMultipleRoots";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::NotIrreduciblePrime: return "NotIrreduciblePrime";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::FactorSplit: return "FactorSplit";
    case ErrorKind::DistinctSupports: return "DistinctSupports";
    case ErrorKind::InsufficientInitialData: return "InsufficientInitialData";
    case ErrorKind::InconsistentInitialData: return "InconsistentInitialData";
    case ErrorKind::LeadingSingularity: return "LeadingSingularity";
    case ErrorKind::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorKind::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorKind::DivisionByZeroSeries: return "DivisionByZeroSeries";
    case ErrorKind::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorKind::MaxDepth: return "MaxDepth";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ExponentNotAffine: return "ExponentNotAffine";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace rittlab
