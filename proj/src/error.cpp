#include "clm/error.hpp"

namespace clm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::pole_hit: return "PoleHit";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::not_upper_holomorphic: return "NotUpperHolomorphic";
    case ErrorKind::domain_too_small: return "DomainTooSmall";
    case ErrorKind::at_singularity: return "AtSingularity";
    case ErrorKind::empty_s: return "EmptyS";
    case ErrorKind::quadrature_fail: return "QuadratureFail";
    case ErrorKind::wrong_degeneracy: return "WrongDegeneracy";
    case ErrorKind::no_bracket: return "NoBracket";
    case ErrorKind::peak_on_boundary: return "PeakOnBoundary";
    case ErrorKind::insufficient_decades: return "InsufficientDecades";
    case ErrorKind::guard_tripped: return "GuardTripped";
    case ErrorKind::derivative_vanishes: return "DerivativeVanishes";
    case ErrorKind::no_touch: return "NoTouch";
    case ErrorKind::unclassifiable_trajectory: return "UnclassifiableTrajectory";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return 1;
    case ErrorKind::guard_tripped: return 3;
    default: return 2;
  }
}

}  // namespace clm
