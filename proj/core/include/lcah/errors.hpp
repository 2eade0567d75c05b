#pragma once

#include <stdexcept>
#include <string>

namespace lcah {

enum class ErrorKind {
  Scalar,
  MixedSymbolTables,
  MissingShadow,
  ShapeMismatch,
  InvalidMorphism,
  OutsideFragment,
  NotMonic,
  NotGhost,
  NonCommuting,
  InvalidCertificate,
  UpperNotDiscrete,
  NotPrecompact,
  RefinementNotGhost,
  OrderBoundExceeded,
  NotRepresentable,
  Parse,
  Session,
  Usage,
  Internal,
};

const char *error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  // User errors map to exit code 1, internal invariant failures to 2.
  bool is_internal() const { return kind_ == ErrorKind::Internal; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &msg) {
  throw Error(kind, msg);
}

[[noreturn]] inline void internal_error(const std::string &msg) {
  throw Error(ErrorKind::Internal, msg);
}

} // namespace lcah
