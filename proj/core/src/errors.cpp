#include "lcah/errors.hpp"

namespace lcah {

const char *error_kind_name(ErrorKind k) {
  switch (k) {
  case ErrorKind::Scalar: return "ScalarError";
  case ErrorKind::MixedSymbolTables: return "MixedSymbolTables";
  case ErrorKind::MissingShadow: return "MissingShadow";
  case ErrorKind::ShapeMismatch: return "ShapeMismatch";
  case ErrorKind::InvalidMorphism: return "InvalidMorphism";
  case ErrorKind::OutsideFragment: return "OutsideFragment";
  case ErrorKind::NotMonic: return "NotMonic";
  case ErrorKind::NotGhost: return "NotGhost";
  case ErrorKind::NonCommuting: return "NonCommuting";
  case ErrorKind::InvalidCertificate: return "InvalidCertificate";
  case ErrorKind::UpperNotDiscrete: return "UpperNotDiscrete";
  case ErrorKind::NotPrecompact: return "NotPrecompact";
  case ErrorKind::RefinementNotGhost: return "RefinementNotGhost";
  case ErrorKind::OrderBoundExceeded: return "OrderBoundExceeded";
  case ErrorKind::NotRepresentable: return "NotRepresentable";
  case ErrorKind::Parse: return "ParseError";
  case ErrorKind::Session: return "SessionError";
  case ErrorKind::Usage: return "UsageError";
  case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

} // namespace lcah
