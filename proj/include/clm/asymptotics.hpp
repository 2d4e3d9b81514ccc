#pragma once

#include <span>
#include <string>
#include <vector>

#include "clm/exact.hpp"
#include "clm/fitting.hpp"

namespace clm {

// H(omega0)(0) = 2a, H(omega0)''(0) = 4b, and
//   n = 0: omega0'(0) = -2c,
//   n >= 1: omega0^(2n+1)(0) = -4c (2n+1)!.
// T = 1/a; rT = a / sqrt(b) for n >= 1 (0 when n = 0).
struct TheoremParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  int n = 0;
  double T = 0.0;
  double rT = 0.0;
};

TheoremParams make_params(double a, double b, double c, int n);

enum class ProfileKind { omega1, omega2n };

struct ProfileSpec {
  ProfileKind kind = ProfileKind::omega1;
  TheoremParams params;

  // omega1 for n = 0, omega2n otherwise.
  static ProfileSpec for_params(const TheoremParams& p);
  // Throws InvalidArgument.
  void validate() const;
};

// Exact Taylor coefficients for rational traces, Richardson extrapolation
// in h^2 otherwise. Throws WrongDegeneracy when a lower odd derivative of
// omega0 does not vanish, omega0(0) != 0, or a, c (and b for n >= 1) are
// not positive.
TheoremParams extract_params(const InitialDatum& datum, int n);

// (Omega, H(Omega)) at z.
FieldValue profile(const ProfileSpec& spec, double z);

// p(x) = omega0(x) / (-4c x^(2n+1)) (n = 0: / (-2c x)); q(x) = (H0(x) - 2a) / (2b x^2).
// Both equal 1 at x = 0.
double p_function(const InitialDatum& datum, const TheoremParams& params, double x);
double q_function(const InitialDatum& datum, const TheoremParams& params, double x);

// Largest x <= x_max such that p and q stay in [1/2, 2] on [0, x].
double pq_validity_radius(const InitialDatum& datum, const TheoremParams& params,
                          double x_max = 10.0, int samples = 4000);

// Solves r^2 q(r sqrt(T - t)) = a / (b t) for r in (0, 2a/sqrt(b)], taking
// the root nearest a/sqrt(b). Throws NoBracket if there is none.
double r_of_t(const InitialDatum& datum, const TheoremParams& params, double t);

enum class CenterRule { implicit_r, constant_rT };

struct ProfileError {
  double tau = 0.0;
  double err_omega = 0.0;
  double err_hilbert = 0.0;
};

// sup over z in [-window, window] (2001 samples) of
//   |tau^k omega(x(z), T - tau) - Omega(z)| and the same for H,
// where n = 0: x = tau z, k = 1; n >= 1: x = r sqrt(tau) + tau^n z,
// k = (2n+1)/2.
ProfileError profile_error(const InitialDatum& datum, const TheoremParams& params, double tau,
                           double window = 10.0, CenterRule center = CenterRule::implicit_r);

struct ScaleSample {
  double tau = 0.0;
  double peak = 0.0;
  double x_peak = 0.0;
  double fwhm = 0.0;
};

struct ScalingReport {
  double c_omega = 0.0;
  double c_l = 0.0;
  double c_s = 0.0;
  double tau_min = 0.0;
  double tau_max = 0.0;
  double rms_omega = 0.0;
  double rms_l = 0.0;
  double rms_s = 0.0;
  double power_relation_defect = 0.0;
  // Peak location shrinks at the width's rate: no separate larger scale.
  bool c_s_degenerate = false;
  std::vector<ScaleSample> samples;
};

// Positive-x peak of |omega|, its location and the full width at half
// maximum of |omega| around it, per snapshot, fitted against T - t.
// With `exact` the peak is refined by golden section and the half-max
// crossings by bisection on the closed form. Throws InsufficientDecades
// (fewer than 6 snapshots or less than two decades of T - t) and
// PeakOnBoundary.
ScalingReport measure_scales(std::span<const SolutionSnapshot> snapshots, double T,
                             const InitialDatum* exact = nullptr);

// Snapshot at T - tau on a grid refined around the positive peak (zoomed
// until the half-max region holds at least ten points), mirrored to x < 0.
SolutionSnapshot peak_resolving_snapshot(const InitialDatum& datum, double tau);

struct TravelingWaveValue {
  double f = 0.0;
  double hilbert_f = 0.0;
  // r f' - f H(f)
  double residual = 0.0;
};

// f(x) = -2cr / (1 + c^2 x^2) with its analytic Hilbert transform
// -2c^2 r x / (1 + c^2 x^2). Throws InvalidArgument for c <= 0.
TravelingWaveValue traveling_wave_profile(double r, double c, double x);

}  // namespace clm
