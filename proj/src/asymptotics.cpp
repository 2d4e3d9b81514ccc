#include "clm/asymptotics.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "clm/error.hpp"

namespace clm {

TheoremParams make_params(double a, double b, double c, int n) {
  TheoremParams p{a, b, c, n, 1.0 / a, 0.0};
  if (n >= 1 && b > 0.0) p.rT = a / std::sqrt(b);
  return p;
}

ProfileSpec ProfileSpec::for_params(const TheoremParams& p) {
  return {p.n == 0 ? ProfileKind::omega1 : ProfileKind::omega2n, p};
}

void ProfileSpec::validate() const {
  if (!(params.a > 0.0) || !(params.c > 0.0)) throw InvalidArgument("profile needs a, c > 0");
  if (kind == ProfileKind::omega1 && params.n != 0) throw InvalidArgument("Omega1 requires n = 0");
  if (kind == ProfileKind::omega2n && (params.n < 1 || !(params.b > 0.0)))
    throw InvalidArgument("Omega2n requires n >= 1 and b > 0");
}

namespace {

bool leading_coefficients_vanish(const std::vector<double>& num, int m) {
  for (int k = 0; k < m && k < static_cast<int>(num.size()); ++k)
    if (num[static_cast<std::size_t>(k)] != 0.0) return false;
  return true;
}

}  // namespace

TheoremParams extract_params(const InitialDatum& datum, int n) {
  if (n < 0) throw InvalidArgument("degeneracy order n must be >= 0");
  const int lead = 2 * n + 1;
  const BoundaryTrace& tr = datum.trace;
  double h0 = 0.0, h2 = 0.0, w_lead = 0.0;

  if (tr.has_exact()) {
    const std::vector<double> wt = tr.omega_exact().taylor(lead);
    const std::vector<double> ht = tr.hilbert_exact().taylor(2);
    h0 = ht[0];
    h2 = ht[2];
    w_lead = wt[static_cast<std::size_t>(lead)];
    const double tol = 1e-10 * std::max(1.0, std::abs(w_lead));
    for (int k = 0; k < lead; ++k)
      if (std::abs(wt[static_cast<std::size_t>(k)]) > tol)
        throw WrongDegeneracy("omega0 Taylor coefficient of x^" + std::to_string(k) +
                              " is nonzero; the datum does not have degeneracy order n = " +
                              std::to_string(n));
  } else {
    h0 = tr.hilbert_omega0(0.0);
    h2 = richardson_h2([&](double h) { return (tr.hilbert_omega0(h) - h0) / (h * h); }, 0.05);
    w_lead = richardson_h2([&](double h) { return tr.omega0(h) / std::pow(h, lead); }, 0.05);
    const double tol = 1e-6 * std::max(1.0, std::abs(w_lead));
    if (std::abs(tr.omega0(0.0)) > tol) throw WrongDegeneracy("omega0(0) is nonzero");
    for (int k = 0; k < n; ++k) {
      const double w = richardson_h2([&](double h) { return tr.omega0(h) / std::pow(h, 2 * k + 1); }, 0.05);
      if (std::abs(w) > tol)
        throw WrongDegeneracy("omega0 derivative of order " + std::to_string(2 * k + 1) +
                              " at 0 is nonzero; the datum does not have degeneracy order n = " +
                              std::to_string(n));
    }
  }

  const double a = h0 / 2.0;
  const double b = h2 / 2.0;
  const double c = n == 0 ? -w_lead / 2.0 : -w_lead / 4.0;
  if (!(a > 0.0)) throw WrongDegeneracy("H(omega0)(0) must be positive");
  if (!(c > 0.0)) throw WrongDegeneracy("leading derivative of omega0 at 0 must be negative");
  if (n >= 1 && !(b > 0.0)) throw WrongDegeneracy("H(omega0)''(0) must be positive for n >= 1");
  return make_params(a, b, c, n);
}

FieldValue profile(const ProfileSpec& spec, double z) {
  spec.validate();
  const TheoremParams& p = spec.params;
  if (spec.kind == ProfileKind::omega1) {
    const double a2 = p.a * p.a;
    const double den = a2 * a2 + p.c * p.c * z * z;
    return {-2.0 * a2 * p.c * z / den, 2.0 * a2 * a2 / den};
  }
  const int n = p.n;
  const double den = std::pow(p.a, 4 * n) * p.c * p.c + std::pow(p.b, 2 * n + 2) * z * z;
  const double omega = -std::pow(p.a, 2 * n + 1) * std::pow(p.b, (2 * n + 1) / 2.0) * p.c / den;
  const double hilbert = -p.a * std::pow(p.b, (4 * n + 3) / 2.0) * z / den;
  return {omega, hilbert};
}

double p_function(const InitialDatum& datum, const TheoremParams& params, double x) {
  if (x == 0.0) return 1.0;
  const int lead = 2 * params.n + 1;
  const double scale = params.n == 0 ? -2.0 * params.c : -4.0 * params.c;
  const BoundaryTrace& tr = datum.trace;
  if (tr.has_exact() && leading_coefficients_vanish(tr.omega_exact().num, lead))
    return tr.omega_exact().divided_by_power(x, lead) / scale;
  return tr.omega0(x) / std::pow(x, lead) / scale;
}

double q_function(const InitialDatum& datum, const TheoremParams& params, double x) {
  if (x == 0.0) return 1.0;
  const BoundaryTrace& tr = datum.trace;
  if (tr.has_exact() && leading_coefficients_vanish(tr.hilbert_excess_exact().num, 2))
    return tr.hilbert_excess_exact().divided_by_power(x, 2) / (2.0 * params.b);
  return (tr.hilbert_omega0(x) - 2.0 * params.a) / (2.0 * params.b * x * x);
}

double pq_validity_radius(const InitialDatum& datum, const TheoremParams& params, double x_max,
                          int samples) {
  double last_good = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double x = x_max * i / samples;
    const double p = p_function(datum, params, x);
    const double q = q_function(datum, params, x);
    if (!(p >= 0.5 && p <= 2.0 && q >= 0.5 && q <= 2.0)) break;
    last_good = x;
  }
  return last_good;
}

double r_of_t(const InitialDatum& datum, const TheoremParams& params, double t) {
  if (params.n < 1 || !(params.b > 0.0)) throw InvalidArgument("r(t) needs n >= 1 and b > 0");
  if (!(t > 0.0) || t > params.T) throw InvalidArgument("r(t) needs 0 < t <= T");
  const double tau = params.T - t;
  const double rhs = params.a / (params.b * t);
  const double r_T = params.a / std::sqrt(params.b);
  if (tau == 0.0) return std::sqrt(rhs);
  const double sq = std::sqrt(tau);
  const auto F = [&](double r) { return r * r * q_function(datum, params, r * sq) - rhs; };

  constexpr int kSamples = 2000;
  const double r_max = 2.0 * r_T;
  double best = std::numeric_limits<double>::quiet_NaN();
  double r_prev = r_max / kSamples;
  double f_prev = F(r_prev);
  for (int k = 2; k <= kSamples; ++k) {
    const double r = r_max * k / kSamples;
    const double f = F(r);
    double root = std::numeric_limits<double>::quiet_NaN();
    if (f == 0.0) {
      root = r;
    } else if ((f_prev < 0.0) != (f < 0.0) && f_prev != 0.0) {
      std::uintmax_t iterations = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          F, r_prev, r, f_prev, f, boost::math::tools::eps_tolerance<double>(52), iterations);
      root = 0.5 * (bracket.first + bracket.second);
    }
    if (std::isfinite(root) && (!std::isfinite(best) || std::abs(root - r_T) < std::abs(best - r_T)))
      best = root;
    r_prev = r;
    f_prev = f;
  }
  if (!std::isfinite(best))
    throw NoBracket("r^2 q(r sqrt(T - t)) = a / (b t) has no root in (0, 2a/sqrt(b)] at T - t = " +
                    std::to_string(tau));
  return best;
}

ProfileError profile_error(const InitialDatum& datum, const TheoremParams& params, double tau,
                           double window, CenterRule center) {
  if (!(tau > 0.0)) throw InvalidArgument("profile_error needs T - t > 0");
  const ProfileSpec spec = ProfileSpec::for_params(params);
  const int n = params.n;
  double x0 = 0.0, width = tau, amplitude = tau;
  if (n >= 1) {
    const double r = center == CenterRule::implicit_r ? r_of_t(datum, params, params.T - tau) : params.rT;
    x0 = r * std::sqrt(tau);
    width = std::pow(tau, n);
    amplitude = std::pow(tau, (2 * n + 1) / 2.0);
  }
  ProfileError e{tau, 0.0, 0.0};
  constexpr int kSamples = 2001;
  for (int i = 0; i < kSamples; ++i) {
    const double z = -window + 2.0 * window * i / (kSamples - 1);
    const FieldValue v = evaluate_before_blowup(datum, x0 + width * z, tau);
    const FieldValue ref = profile(spec, z);
    e.err_omega = std::max(e.err_omega, std::abs(amplitude * v.omega - ref.omega));
    e.err_hilbert = std::max(e.err_hilbert, std::abs(amplitude * v.hilbert_omega - ref.hilbert_omega));
  }
  return e;
}

namespace {

ScaleSample measure_one(const SolutionSnapshot& s, double tau, const InitialDatum* exact) {
  const std::vector<double>& x = s.xs;
  const std::size_t n = x.size();
  std::size_t first_pos = n;
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] > 0.0) {
      first_pos = i;
      break;
    }
  if (first_pos + 2 >= n) throw PeakOnBoundary("snapshot has fewer than three points with x > 0");
  std::size_t im = first_pos;
  for (std::size_t i = first_pos; i < n; ++i)
    if (std::abs(s.omega[i]) > std::abs(s.omega[im])) im = i;
  if (im == first_pos || im == n - 1)
    throw PeakOnBoundary("peak of |omega| on the grid boundary at t = " + std::to_string(s.t));

  const auto absw = [&](double xx) { return std::abs(evaluate_before_blowup(*exact, xx, tau).omega); };
  ScaleSample m;
  m.tau = tau;
  if (exact) {
    m.x_peak = golden_section_max(absw, x[im - 1], x[im + 1]);
    m.peak = absw(m.x_peak);
  } else {
    const double y0 = std::abs(s.omega[im - 1]), y1 = std::abs(s.omega[im]), y2 = std::abs(s.omega[im + 1]);
    const double x0 = x[im - 1], x1 = x[im], x2 = x[im + 1];
    // Vertex of the parabola through the three points.
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double curv = (d2 - d1) / (x2 - x0);
    if (curv < 0.0) {
      m.x_peak = 0.5 * (x0 + x1) - d1 / (2.0 * curv);
      m.x_peak = std::clamp(m.x_peak, x0, x2);
      m.peak = y0 + d1 * (m.x_peak - x0) + curv * (m.x_peak - x0) * (m.x_peak - x1);
    } else {
      m.x_peak = x1;
      m.peak = y1;
    }
  }
  const double half = 0.5 * m.peak;

  const auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double xi = x[inside], xo = x[outside];
    if (exact) {
      double a = std::min(xi, xo), b = std::max(xi, xo);
      const bool inside_left = xi < xo;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::abs(b); ++it) {
        const double mid = 0.5 * (a + b);
        const bool above = absw(mid) >= half;
        if (above == inside_left) {
          a = mid;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    const double yi = std::abs(s.omega[inside]), yo = std::abs(s.omega[outside]);
    return xi + (half - yi) * (xo - xi) / (yo - yi);
  };

  std::size_t left = im;
  while (left > 0 && std::abs(s.omega[left - 1]) >= half) --left;
  if (left == 0) throw PeakOnBoundary("left half-maximum crossing outside the grid");
  std::size_t right = im;
  while (right + 1 < n && std::abs(s.omega[right + 1]) >= half) ++right;
  if (right + 1 == n) throw PeakOnBoundary("right half-maximum crossing outside the grid");
  m.fwhm = crossing(right, right + 1) - crossing(left, left - 1);
  return m;
}

}  // namespace

ScalingReport measure_scales(std::span<const SolutionSnapshot> snapshots, double T,
                             const InitialDatum* exact) {
  if (snapshots.size() < 6) throw InsufficientDecades("need at least 6 snapshots");
  ScalingReport rep;
  std::vector<double> taus, peaks, locs, widths;
  for (const SolutionSnapshot& s : snapshots) {
    const double tau = T - s.t;
    if (!(tau > 0.0)) throw InvalidArgument("snapshot at or after the blowup time");
    const ScaleSample m = measure_one(s, tau, exact);
    rep.samples.push_back(m);
    taus.push_back(tau);
    peaks.push_back(m.peak);
    locs.push_back(m.x_peak);
    widths.push_back(m.fwhm);
  }
  rep.tau_min = *std::min_element(taus.begin(), taus.end());
  rep.tau_max = *std::max_element(taus.begin(), taus.end());
  if (std::log10(rep.tau_max / rep.tau_min) < 2.0 - 1e-9)
    throw InsufficientDecades("T - t spans fewer than two decades");
  const PowerLawFit fw = fit_power_law(taus, peaks);
  const PowerLawFit fs = fit_power_law(taus, locs);
  const PowerLawFit fl = fit_power_law(taus, widths);
  rep.c_omega = fw.exponent;
  rep.c_s = fs.exponent;
  rep.c_l = fl.exponent;
  rep.rms_omega = fw.rms;
  rep.rms_s = fs.rms;
  rep.rms_l = fl.rms;
  rep.power_relation_defect = rep.c_omega + rep.c_l - rep.c_s + 1.0;
  rep.c_s_degenerate = std::abs(rep.c_s - rep.c_l) < 0.25;
  return rep;
}

SolutionSnapshot peak_resolving_snapshot(const InitialDatum& datum, double tau) {
  const auto absw = [&](double x) { return std::abs(evaluate_before_blowup(datum, x, tau).omega); };
  std::vector<double> nodes = log_spaced(1e-14, 10.0, 2001);
  std::vector<double> values(nodes.size());
  std::transform(nodes.begin(), nodes.end(), values.begin(), absw);
  std::size_t im = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  double lo = nodes[im == 0 ? 0 : im - 1];
  double hi = nodes[std::min(im + 1, nodes.size() - 1)];
  double width = hi - lo;
  double center = nodes[im];

  for (int zoom = 0; zoom < 60; ++zoom) {
    const std::vector<double> z = linspace(lo, hi, 201);
    std::vector<double> zv(z.size());
    std::transform(z.begin(), z.end(), zv.begin(), absw);
    nodes.insert(nodes.end(), z.begin(), z.end());
    const std::size_t k = static_cast<std::size_t>(std::max_element(zv.begin(), zv.end()) - zv.begin());
    const double half = 0.5 * zv[k];
    std::size_t above = 0;
    double first = hi, last = lo;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (zv[i] > half) {
        ++above;
        first = std::min(first, z[i]);
        last = std::max(last, z[i]);
      }
    center = z[k];
    width = std::max(last - first, z[1] - z[0]);
    if (above >= 10) break;
    lo = z[k == 0 ? 0 : k - 1];
    hi = z[std::min(k + 1, z.size() - 1)];
  }
  const std::vector<double> fine = linspace(center - 10.0 * width, center + 10.0 * width, 2001);
  for (const double x : fine)
    if (x > 0.0) nodes.push_back(x);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<double> xs;
  xs.reserve(2 * nodes.size() + 1);
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) xs.push_back(-*it);
  xs.push_back(0.0);
  xs.insert(xs.end(), nodes.begin(), nodes.end());
  return snapshot_before_blowup(datum, xs, tau);
}

TravelingWaveValue traveling_wave_profile(double r, double c, double x) {
  if (!(c > 0.0)) throw InvalidArgument("traveling wave needs c > 0");
  const double den = 1.0 + c * c * x * x;
  const double f = -2.0 * c * r / den;
  const double hf = -2.0 * c * c * r * x / den;
  const double df = 4.0 * c * c * c * r * x / (den * den);
  return {f, hf, r * df - f * hf};
}

}  // namespace clm
