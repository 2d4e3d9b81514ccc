#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clm/asymptotics.hpp"
#include "clm/rational.hpp"

namespace clm {

// zeta(z, t) = zeta0(z) + i t / 2.
struct ZetaState {
  RationalFunction zeta0;
  double t = 0.0;
};

// Roots of num(zeta0) + (i t / 2) den(zeta0), dropping any that are also
// roots of den(zeta0).
std::vector<Root> zeros_at_time(const RationalFunction& zeta0, double t);
std::vector<Root> zeros_at_time(const ZetaState& state);

enum class EventKind { branch, merge, real_axis_touch };
const char* to_string(EventKind k);

struct TrajectoryEvent {
  EventKind kind;
  double t;
  cplx z;
};

enum class TrajectorySource { algebraic, ode, both };
const char* to_string(TrajectorySource s);

struct TrajectorySample {
  double t;
  cplx z;
};

struct PoleTrajectory {
  std::vector<TrajectorySample> samples;
  std::vector<TrajectoryEvent> events;
  TrajectorySource source = TrajectorySource::algebraic;
  int branch_id = 0;
};

inline constexpr double kAxisTolerance = 1e-10;

// RK4 on Z' = -i / (2 zeta0'(Z)) with substeps limited by the local
// curvature, Newton polish onto zeta0(Z) + i t/2 = 0 after each step, and
// samples at t0 + k dt (and t1). Stops at the first Im Z >= -1e-10
// (touch time bisected to 1e-12) or when zeta0' collapses along the way
// (merge event). Throws DerivativeVanishes if zeta0'(Z0) = 0.
PoleTrajectory integrate_trajectory(const RationalFunction& zeta0, cplx z0, double t0, double t1,
                                    double dt);

// Algebraic continuation of every zero from t0 to t1 on the grid t0 + k dt
// with nearest-neighbour matching and step halving. Merges (distance
// < 1e-6) and branchings (multiple zero at t0, seeded at t0 + 1e-6) become
// events; tracking stops at the first real-axis touch.
std::vector<PoleTrajectory> track_zeros(const RationalFunction& zeta0, double t0, double t1,
                                        double dt);

struct TouchResult {
  double T = 0.0;
  std::vector<double> points;
};

// First t >= 0 at which a zero of zeta(., t) reaches the real axis: coarse
// scan of max Im over zeros_at_time, bisection, then refinement through
// the real roots of Re zeta0 = 0 (where T = -2 Im zeta0(x)). Throws
// NoTouch when no zero reaches the axis by t_max.
TouchResult first_touch(const RationalFunction& zeta0, double t_max = 100.0);

// Zero of zeta(., T - tau) nearest the touch point x_star for each tau,
// from the polynomial re-centred at x_star so the O(tau) imaginary parts
// keep full relative accuracy. Of two equidistant zeros the one with the
// larger real part is taken.
PoleTrajectory sample_near_touch(const RationalFunction& zeta0, double T, double x_star,
                                 std::span<const double> taus);

enum class TrajectoryClass { one_scale, two_scale, traveling, other };
const char* to_string(TrajectoryClass c);

struct LocalExponents {
  // NaN when X is fixed at x_star.
  double alpha_x = 0.0;
  double alpha_y = 0.0;
  TrajectoryClass classification = TrajectoryClass::other;
  // n of two_scale(n).
  int n = 0;
  bool x_fixed = false;
};

// Fits of |X - x_star| and |Y| against T - t over samples with
// T - t in [1e-6, 1e-2]. traveling: |alpha_y| <= 0.05; one_scale: X fixed
// (or alpha_x within 0.1 of 1) and alpha_y within 0.1 of 1; two_scale(n):
// alpha_x within 0.1 of 1/2 and alpha_y within 0.2 of an integer n >= 1.
// Throws UnclassifiableTrajectory with fewer than three usable samples.
LocalExponents local_exponents(const PoleTrajectory& traj, double T, double x_star = 0.0);

// (X', Y') from A = Re zeta0, B = Im zeta0 via Cauchy-Riemann:
// X' = -B_x / (2 (A_x^2 + B_x^2)), Y' = -A_x / (2 (A_x^2 + B_x^2)).
// Throws DerivativeVanishes at critical points of zeta0.
std::pair<double, double> xy_ode_rhs(const RationalFunction& zeta0, double X, double Y);

// Parameters in the local normalization omega0 ~ -c x^(2n+1),
// H(omega0) ~ a + b x^2: a = 2a, b = 2b, c = 4c of the theorem form
// (c = 2c when n = 0).
TheoremParams to_local_normalization(const TheoremParams& thm);

struct ShapeRelation {
  // log-log slope of |Y| against X.
  double slope_y_vs_x = 0.0;
  // log-log slope of |Y + (c/2b) X^(2n)| against X.
  double slope_shape_residual = 0.0;
  // max |Y + (c/2b) X^(2n)| / X^(2n+1).
  double max_shape_ratio = 0.0;
  // log-log slope of |X^2 - (a^2/2b)(T - t)| against T - t.
  double slope_x2_residual = 0.0;
  // X^2 / ((a^2/2b)(T - t)) at the smallest T - t.
  double x2_leading_ratio = 0.0;
};

// `local` is in the local normalization (see to_local_normalization).
// Uses samples with X > 0.
ShapeRelation shape_relation_check(const PoleTrajectory& traj, const TheoremParams& local, double T);

}  // namespace clm
