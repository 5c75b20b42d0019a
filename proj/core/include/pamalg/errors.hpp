#pragma once

#include <stdexcept>
#include <string>

namespace pamalg {

enum class ErrorKind {
  CycleDetected,
  UnknownElement,
  SizeCap,
  NotInjective,
  OrderViolation,
  NotIsomorphism,
  TypeMismatch,
  DomainConflict,
  PreconditionViolation,
  HypothesisViolation,
  BoundExhausted,
  CertificateInvalid,
  InternalInvariantBroken,
  ResourceLimit,
  InputError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pamalg
