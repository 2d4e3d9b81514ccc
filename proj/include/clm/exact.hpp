#pragma once

#include <span>
#include <string>
#include <vector>

#include "clm/rational.hpp"

namespace clm {

struct InitialDatum {
  BoundaryTrace trace;
  // Largest k with omega0 in C^k near 0; -1 if unknown.
  int smoothness_order = -1;
  bool odd_symmetric = false;
  // sgn(omega0(x)) = -sgn(x) for x != 0.
  bool sign_condition = false;
  std::string label;

  // Checks the flagged symmetry and sign properties on a sample grid.
  // Throws InvalidArgument naming the first violation.
  void validate(double half_width = 20.0, int samples = 801) const;
};

// Datum from an upper-holomorphic eta0; rational data are smooth
// (smoothness_order stays -1 meaning "infinitely").
InitialDatum make_datum(const RationalFunction& eta0, std::string label = {},
                        bool odd_symmetric = false, bool sign_condition = false);

struct FieldValue {
  double omega = 0.0;
  double hilbert_omega = 0.0;
};

// Closed-form solution:
//   omega   = 4 omega0 / D,
//   H(omega) = (2 H0 (2 - t H0) - 2 t omega0^2) / D,
//   D = (2 - t H0)^2 + t^2 omega0^2.
// Throws AtSingularity when D <= 1e-13 (1 + t^2)(1 + |eta0|^2).
FieldValue evaluate(const InitialDatum& datum, double x, double t);

// Same solution at t = T - tau for data blowing up at the origin with
// T = 2 / H0(0). 2 - t H0(x) is formed as tau H0(x) - T (H0(x) - H0(0)),
// which stays accurate as tau -> 0. Throws AtSingularity when D is at the
// rounding level of its terms.
FieldValue evaluate_before_blowup(const InitialDatum& datum, double x, double tau);

struct SolutionSnapshot {
  double t = 0.0;
  std::vector<double> xs;
  std::vector<double> omega;
  std::vector<double> hilbert_omega;
  std::string label;
};

SolutionSnapshot snapshot(const InitialDatum& datum, std::span<const double> xs, double t);
// Snapshot at T - tau via evaluate_before_blowup.
SolutionSnapshot snapshot_before_blowup(const InitialDatum& datum, std::span<const double> xs,
                                        double tau);

struct BlowupPrediction {
  double T = 0.0;
  std::vector<double> points;
  double sup_h = 0.0;
  // Every refined zero of omega0 in the search interval.
  std::vector<double> zeros;
};

// Zeros of omega0 by a 1e4-sample scan and bisection to 1e-12; S keeps
// zeros with H0 > 0, T = 2 / sup_S H0, ties within 1e-10 all reported.
// Zeros where omega0 touches 0 without a sign change are not detected.
// Throws EmptyS when S is empty.
BlowupPrediction predict_blowup(const InitialDatum& datum, double lo = -50.0, double hi = 50.0);

// (T - t) H(omega)(0, t); equals 2 for data blowing up at the origin.
double conserved_quantity(const InitialDatum& datum, double t, double T);

// -(1/pi) PV int omega0(y) / y dy = -(1/pi) int_0^inf (omega0(y) - omega0(-y)) / y dy
// by Gauss-Kronrod on the half line. Throws QuadratureFail when the error
// estimate exceeds tol (1 + |value|).
double hilbert_at_zero_integral(const InitialDatum& datum, double tol = 1e-9);

}  // namespace clm
