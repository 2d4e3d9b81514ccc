#pragma once

#include <stdexcept>
#include <string>

namespace clm {

enum class ErrorKind {
  invalid_argument,
  pole_hit,
  no_convergence,
  not_upper_holomorphic,
  domain_too_small,
  at_singularity,
  empty_s,
  quadrature_fail,
  wrong_degeneracy,
  no_bracket,
  peak_on_boundary,
  insufficient_decades,
  guard_tripped,
  derivative_vanishes,
  no_touch,
  unclassifiable_trajectory,
};

const char* to_string(ErrorKind kind);

// Base of every failure raised by the library. The kind drives the
// command-line exit status (see exit_code).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindError : public Error {
 public:
  explicit KindError(const std::string& what) : Error(K, what) {}
};

using InvalidArgument = KindError<ErrorKind::invalid_argument>;
using PoleHit = KindError<ErrorKind::pole_hit>;
using NoConvergence = KindError<ErrorKind::no_convergence>;
using NotUpperHolomorphic = KindError<ErrorKind::not_upper_holomorphic>;
using DomainTooSmall = KindError<ErrorKind::domain_too_small>;
using AtSingularity = KindError<ErrorKind::at_singularity>;
using EmptyS = KindError<ErrorKind::empty_s>;
using QuadratureFail = KindError<ErrorKind::quadrature_fail>;
using WrongDegeneracy = KindError<ErrorKind::wrong_degeneracy>;
using NoBracket = KindError<ErrorKind::no_bracket>;
using PeakOnBoundary = KindError<ErrorKind::peak_on_boundary>;
using InsufficientDecades = KindError<ErrorKind::insufficient_decades>;
using GuardTripped = KindError<ErrorKind::guard_tripped>;
using DerivativeVanishes = KindError<ErrorKind::derivative_vanishes>;
using NoTouch = KindError<ErrorKind::no_touch>;
using UnclassifiableTrajectory = KindError<ErrorKind::unclassifiable_trajectory>;

// 1 usage, 2 domain error, 3 blowup guard.
int exit_code(ErrorKind kind);

}  // namespace clm
