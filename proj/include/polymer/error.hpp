#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polymer {

enum class ErrorKind {
  InvalidArgument,
  DegenerateState,
  NoRoot,
  SpeedMismatch,
  NoIntersection,
  StalledAtApex,
  NotAContact,
  WrongRegion,
  NoAdmissibleSolution,
  AmbiguousSolution,
  UnsupportedModel,
  PreconditionViolated,
  RootCountMismatch,
  NoConnection,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so
/// callers (the CLI in particular) can map it onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polymer
