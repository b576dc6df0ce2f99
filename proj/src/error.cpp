#include "polymer/error.hpp"

namespace polymer {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateState: return "DegenerateState";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::SpeedMismatch: return "SpeedMismatch";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::StalledAtApex: return "StalledAtApex";
    case ErrorKind::NotAContact: return "NotAContact";
    case ErrorKind::WrongRegion: return "WrongRegion";
    case ErrorKind::NoAdmissibleSolution: return "NoAdmissibleSolution";
    case ErrorKind::AmbiguousSolution: return "AmbiguousSolution";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::RootCountMismatch: return "RootCountMismatch";
    case ErrorKind::NoConnection: return "NoConnection";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace polymer
