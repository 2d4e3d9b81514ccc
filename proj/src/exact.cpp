#include "clm/exact.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "clm/error.hpp"

namespace clm {

void InitialDatum::validate(double half_width, int samples) const {
  if (!odd_symmetric && !sign_condition) return;
  for (int i = 0; i < samples; ++i) {
    const double x = -half_width + 2.0 * half_width * i / (samples - 1);
    const double w = trace.omega0(x);
    const double h = trace.hilbert_omega0(x);
    const double scale = 1e-12 * (1.0 + std::abs(w) + std::abs(h));
    if (odd_symmetric) {
      if (std::abs(w + trace.omega0(-x)) > scale)
        throw InvalidArgument("omega0 is not odd at x = " + std::to_string(x));
      if (std::abs(h - trace.hilbert_omega0(-x)) > scale)
        throw InvalidArgument("H(omega0) is not even at x = " + std::to_string(x));
    }
    if (sign_condition && x != 0.0 && w * x > 0.0)
      throw InvalidArgument("sign condition fails at x = " + std::to_string(x));
  }
}

InitialDatum make_datum(const RationalFunction& eta0, std::string label, bool odd_symmetric,
                        bool sign_condition) {
  InitialDatum d{boundary_trace(eta0), -1, odd_symmetric, sign_condition, std::move(label)};
  d.validate();
  return d;
}

FieldValue evaluate(const InitialDatum& datum, double x, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("evaluate requires t >= 0");
  const double w0 = datum.trace.omega0(x);
  const double h0 = datum.trace.hilbert_omega0(x);
  const double a = 2.0 - t * h0;
  const double den = a * a + t * t * w0 * w0;
  const double guard = 1e-13 * (1.0 + t * t) * (1.0 + w0 * w0 + h0 * h0);
  if (den <= guard)
    throw AtSingularity("solution denominator vanishes at x = " + std::to_string(x) +
                        ", t = " + std::to_string(t));
  return {4.0 * w0 / den, (2.0 * h0 * a - 2.0 * t * w0 * w0) / den};
}

FieldValue evaluate_before_blowup(const InitialDatum& datum, double x, double tau) {
  const double h_origin = datum.trace.hilbert_omega0(0.0);
  if (!(h_origin > 0.0)) throw InvalidArgument("H(omega0)(0) must be positive");
  const double T = 2.0 / h_origin;
  if (!(tau >= 0.0) || tau > T) throw InvalidArgument("need 0 <= T - t <= T");
  const double t = T - tau;
  const double w0 = datum.trace.omega0(x);
  const double h0 = datum.trace.hilbert_omega0(x);
  const double dh = datum.trace.hilbert_excess(x);
  const double a = tau * h0 - T * dh;
  const double den = a * a + t * t * w0 * w0;
  const double noise = 1e-13 * (tau * std::abs(h0) + T * std::abs(dh));
  if (den == 0.0 || den <= noise * noise)
    throw AtSingularity("solution denominator vanishes at x = " + std::to_string(x) +
                        ", T - t = " + std::to_string(tau));
  return {4.0 * w0 / den, (2.0 * h0 * a - 2.0 * t * w0 * w0) / den};
}

SolutionSnapshot snapshot(const InitialDatum& datum, std::span<const double> xs, double t) {
  SolutionSnapshot s{t, {xs.begin(), xs.end()}, {}, {}, datum.label};
  s.omega.reserve(xs.size());
  s.hilbert_omega.reserve(xs.size());
  for (const double x : xs) {
    const FieldValue v = evaluate(datum, x, t);
    s.omega.push_back(v.omega);
    s.hilbert_omega.push_back(v.hilbert_omega);
  }
  return s;
}

SolutionSnapshot snapshot_before_blowup(const InitialDatum& datum, std::span<const double> xs,
                                        double tau) {
  const double T = 2.0 / datum.trace.hilbert_omega0(0.0);
  SolutionSnapshot s{T - tau, {xs.begin(), xs.end()}, {}, {}, datum.label};
  s.omega.reserve(xs.size());
  s.hilbert_omega.reserve(xs.size());
  for (const double x : xs) {
    const FieldValue v = evaluate_before_blowup(datum, x, tau);
    s.omega.push_back(v.omega);
    s.hilbert_omega.push_back(v.hilbert_omega);
  }
  return s;
}

BlowupPrediction predict_blowup(const InitialDatum& datum, double lo, double hi) {
  if (!(lo < hi)) throw InvalidArgument("search interval must satisfy lo < hi");
  constexpr int kIntervals = 10000;
  const auto w = [&](double x) { return datum.trace.omega0(x); };
  const auto node = [&](int i) { return i == kIntervals ? hi : lo + (hi - lo) * i / kIntervals; };

  BlowupPrediction out;
  double x_prev = node(0);
  double w_prev = w(x_prev);
  if (w_prev == 0.0) out.zeros.push_back(x_prev);
  for (int i = 1; i <= kIntervals; ++i) {
    const double x = node(i);
    const double wx = w(x);
    if (wx == 0.0) {
      out.zeros.push_back(x);
    } else if (w_prev * wx < 0.0) {
      double a = x_prev, b = x, fa = w_prev;
      while (b - a > 1e-12) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = w(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.zeros.push_back(0.5 * (a + b));
    }
    x_prev = x;
    w_prev = wx;
  }

  double sup = -std::numeric_limits<double>::infinity();
  for (const double z : out.zeros) {
    const double h = datum.trace.hilbert_omega0(z);
    if (h > 0.0) sup = std::max(sup, h);
  }
  if (!(sup > 0.0))
    throw EmptyS("omega0 has no zero with H(omega0) > 0 in [" + std::to_string(lo) + ", " +
                 std::to_string(hi) + "]: no finite-time blowup");
  out.sup_h = sup;
  out.T = 2.0 / sup;
  for (const double z : out.zeros)
    if (std::abs(datum.trace.hilbert_omega0(z) - sup) <= 1e-10) out.points.push_back(z);
  return out;
}

double conserved_quantity(const InitialDatum& datum, double t, double T) {
  if (!(t < T)) throw InvalidArgument("conserved quantity needs t < T");
  return (T - t) * evaluate(datum, 0.0, t).hilbert_omega;
}

double hilbert_at_zero_integral(const InitialDatum& datum, double tol) {
  const auto integrand = [&](double y) {
    return (datum.trace.omega0(y) - datum.trace.omega0(-y)) / y;
  };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13, &error);
  const double value = -integral / std::numbers::pi;
  if (!std::isfinite(value) || error / std::numbers::pi > tol * (1.0 + std::abs(value)))
    throw QuadratureFail("H(omega0)(0) quadrature error estimate " + std::to_string(error) +
                         " exceeds tolerance");
  return value;
}

}  // namespace clm
