#include "qwave/errors.hpp"

namespace qwave {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGeometry: return "Invalid-Geometry";
    case ErrorKind::SelfIntersectionSuspected: return "Self-Intersection-Suspected";
    case ErrorKind::OutOfStrip: return "Out-Of-Strip";
    case ErrorKind::NonfiniteInput: return "Nonfinite-Input";
    case ErrorKind::ConvergenceFailure: return "Convergence-Failure";
    case ErrorKind::GridTooSmall: return "Grid-Too-Small";
    case ErrorKind::EigensolverNonconvergence: return "Eigensolver-Nonconvergence";
    case ErrorKind::CapReached: return "Cap-Reached";
    case ErrorKind::EmptyFamily: return "Empty-Family";
    case ErrorKind::ParseError: return "Parse-Error";
    case ErrorKind::UnknownFamily: return "Unknown-Family";
    case ErrorKind::InvalidParams: return "Invalid-Params";
  }
  return "Unknown-Error";
}

}  // namespace qwave
