#pragma once

#include <stdexcept>
#include <string>

namespace sympconf {

enum class ErrorKind {
  DimensionMismatch,
  Precondition,
  InvalidConfig,
  SingularInconsistent,
  SingularConsistent,
  StarSphereConditionViolated,
  NoFiniteCap,
  UnsafeOverride,
  CapExceeded,
  CheckpointMismatch,
  Io,
  MonotonicityViolation,
  PositivityViolation,
  NearnessViolation,
  NotOrderable,
  BezoutInconsistent,
  UnknownScenario,
  Parse,
};

const char* errorKindName(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(errorKindName(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sympconf
