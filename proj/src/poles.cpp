#include "clm/poles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "clm/error.hpp"
#include "clm/fitting.hpp"

namespace clm {

namespace {

constexpr cplx kI{0.0, 1.0};

Polynomial zeta_polynomial(const RationalFunction& zeta0, double t) {
  return zeta0.num() + Polynomial::constant(kI * (t / 2.0)) * zeta0.den();
}

std::vector<cplx> expand(const std::vector<Root>& rs) {
  std::vector<cplx> out;
  for (const Root& r : rs)
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
  return out;
}

double min_pairwise_distance(const std::vector<cplx>& z) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) d = std::min(d, std::abs(z[i] - z[j]));
  return d;
}

// Greedy nearest-neighbour assignment: result[i] is the index in `next`
// matched to from[i].
std::vector<std::size_t> match_nearest(const std::vector<cplx>& from, const std::vector<cplx>& next) {
  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < next.size(); ++j) pairs.push_back({std::abs(from[i] - next[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });
  std::vector<std::size_t> result(from.size(), next.size());
  std::vector<bool> used(next.size(), false);
  for (const Pair& p : pairs) {
    if (result[p.i] != next.size() || used[p.j]) continue;
    result[p.i] = p.j;
    used[p.j] = true;
  }
  return result;
}

double max_imag(const std::vector<cplx>& z) {
  double m = -std::numeric_limits<double>::infinity();
  for (const cplx v : z) m = std::max(m, v.imag());
  return m;
}

}  // namespace

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::branch: return "branch";
    case EventKind::merge: return "merge";
    case EventKind::real_axis_touch: return "real_axis_touch";
  }
  return "?";
}

const char* to_string(TrajectorySource s) {
  switch (s) {
    case TrajectorySource::algebraic: return "algebraic";
    case TrajectorySource::ode: return "ode";
    case TrajectorySource::both: return "both";
  }
  return "?";
}

const char* to_string(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::one_scale: return "one_scale";
    case TrajectoryClass::two_scale: return "two_scale";
    case TrajectoryClass::traveling: return "traveling";
    case TrajectoryClass::other: return "other";
  }
  return "?";
}

std::vector<Root> zeros_at_time(const RationalFunction& zeta0, double t) {
  const Polynomial p = zeta_polynomial(zeta0, t);
  if (p.degree() < 1) return {};
  std::vector<Root> rs = roots(p);
  const Polynomial& den = zeta0.den();
  if (den.degree() >= 1) {
    std::erase_if(rs, [&](const Root& r) {
      return std::abs(den(r.value)) <= 1e-10 * den.abs_scale(std::abs(r.value));
    });
  }
  return rs;
}

std::vector<Root> zeros_at_time(const ZetaState& state) { return zeros_at_time(state.zeta0, state.t); }

PoleTrajectory integrate_trajectory(const RationalFunction& zeta0, cplx z0, double t0, double t1,
                                    double dt) {
  if (!(dt > 0.0) || !(t1 >= t0)) throw InvalidArgument("integrate_trajectory needs dt > 0 and t1 >= t0");
  const RationalFunction d1 = zeta0.derivative();
  const RationalFunction d2 = d1.derivative();
  const Polynomial num_d = zeta0.num().derivative();
  const Polynomial den_d = zeta0.den().derivative();

  const cplx dz0 = d1(z0);
  if (std::abs(dz0) <= 1e-12 * std::max(1.0, std::abs(zeta0(z0))))
    throw DerivativeVanishes("zeta0' vanishes at the starting point; seed from zeros_at_time instead");

  const auto rhs = [&](cplx z) { return -kI / (2.0 * d1(z)); };
  const auto rk4 = [&](cplx z, double h) {
    const cplx k1 = rhs(z);
    const cplx k2 = rhs(z + 0.5 * h * k1);
    const cplx k3 = rhs(z + 0.5 * h * k2);
    const cplx k4 = rhs(z + h * k3);
    return z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  const auto polish = [&](cplx z, double t) {
    const cplx it2 = kI * (t / 2.0);
    for (int it = 0; it < 3; ++it) {
      const cplx p = zeta0.num()(z) + it2 * zeta0.den()(z);
      const cplx dp = num_d(z) + it2 * den_d(z);
      if (dp == cplx{}) break;
      const cplx step = p / dp;
      if (std::abs(step) > 1e-6 * (1.0 + std::abs(z))) break;
      z -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
  };

  PoleTrajectory traj;
  traj.source = TrajectorySource::ode;
  traj.samples.push_back({t0, z0});
  double t = t0;
  cplx z = z0;
  for (long k = 1; t < t1; ++k) {
    double target = t0 + static_cast<double>(k) * dt;
    if (target > t1 - 1e-14 * std::max(1.0, std::abs(t1))) target = t1;
    while (t < target) {
      const cplx d1z = d1(z);
      const cplx d2z = d2(z);
      double h = target - t;
      bool lands = true;
      if (std::abs(d2z) > 0.0) {
        const double limit = 0.1 * std::abs(d1z) / (std::abs(d2z) * std::abs(rhs(z)));
        if (limit < h) {
          h = limit;
          lands = false;
        }
      }
      if (h < 1e-13 * (1.0 + std::abs(t))) {
        traj.samples.push_back({t, z});
        traj.events.push_back({EventKind::merge, t, z});
        return traj;
      }
      const double tn = lands ? target : t + h;
      cplx zn = polish(rk4(z, tn - t), tn);
      if (zn.imag() >= -kAxisTolerance) {
        double ta = t, tb = tn;
        cplx za = z, zb = zn;
        while (tb - ta > 1e-12) {
          const double tm = 0.5 * (ta + tb);
          const cplx zm = polish(rk4(za, tm - ta), tm);
          if (zm.imag() >= -kAxisTolerance) {
            tb = tm;
            zb = zm;
          } else {
            ta = tm;
            za = zm;
          }
        }
        traj.samples.push_back({tb, zb});
        traj.events.push_back({EventKind::real_axis_touch, tb, zb});
        return traj;
      }
      t = tn;
      z = zn;
    }
    traj.samples.push_back({t, z});
  }
  return traj;
}

std::vector<PoleTrajectory> track_zeros(const RationalFunction& zeta0, double t0, double t1, double dt) {
  if (!(dt > 0.0) || !(t1 >= t0)) throw InvalidArgument("track_zeros needs dt > 0 and t1 >= t0");
  constexpr double kMergeDistance = 1e-6;
  constexpr double kSeedOffset = 1e-6;

  const std::vector<Root> initial = zeros_at_time(zeta0, t0);
  std::vector<cplx> current;
  double t = t0;
  std::vector<PoleTrajectory> branches;
  const bool has_multiple =
      std::any_of(initial.begin(), initial.end(), [](const Root& r) { return r.multiplicity > 1; });
  if (has_multiple) {
    t = t0 + kSeedOffset;
    current = expand(zeros_at_time(zeta0, t));
    for (std::size_t i = 0; i < current.size(); ++i) {
      PoleTrajectory b;
      b.branch_id = static_cast<int>(i);
      std::size_t origin = 0;
      for (std::size_t j = 1; j < initial.size(); ++j)
        if (std::abs(initial[j].value - current[i]) < std::abs(initial[origin].value - current[i])) origin = j;
      b.samples.push_back({t0, initial[origin].value});
      if (initial[origin].multiplicity > 1) b.events.push_back({EventKind::branch, t0, initial[origin].value});
      b.samples.push_back({t, current[i]});
      branches.push_back(std::move(b));
    }
  } else {
    current = expand(initial);
    for (std::size_t i = 0; i < current.size(); ++i) {
      PoleTrajectory b;
      b.branch_id = static_cast<int>(i);
      b.samples.push_back({t, current[i]});
      branches.push_back(std::move(b));
    }
  }
  if (current.empty()) return branches;

  const auto zeros_matched = [&](double tt, const std::vector<cplx>& from) {
    std::vector<cplx> next = expand(zeros_at_time(zeta0, tt));
    if (next.size() != from.size()) return std::vector<cplx>{};
    const auto m = match_nearest(from, next);
    std::vector<cplx> out(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) out[i] = next[m[i]];
    return out;
  };

  for (long k = 1; t < t1; ++k) {
    double target = t0 + static_cast<double>(k) * dt;
    if (target <= t) continue;
    if (target > t1 - 1e-14 * std::max(1.0, std::abs(t1))) target = t1;
    bool merged = false;
    while (t < target && !merged) {
      double h = target - t;
      std::vector<cplx> next;
      double tn = target;
      for (;;) {
        tn = (h == target - t) ? target : t + h;
        next = zeros_matched(tn, current);
        const double mind = min_pairwise_distance(current);
        double maxdisp = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) maxdisp = std::max(maxdisp, std::abs(next[i] - current[i]));
        if (!next.empty() && (maxdisp < 0.5 * mind || h < 1e-12)) break;
        if (h < 1e-12) throw NoConvergence("zero count changed while tracking");
        h /= 2.0;
      }

      if (max_imag(next) >= -kAxisTolerance) {
        double ta = t, tb = tn;
        std::vector<cplx> za = current, zb = next;
        while (tb - ta > 1e-12) {
          const double tm = 0.5 * (ta + tb);
          std::vector<cplx> zm = zeros_matched(tm, za);
          if (zm.empty()) break;
          if (max_imag(zm) >= -kAxisTolerance) {
            tb = tm;
            zb = zm;
          } else {
            ta = tm;
            za = zm;
          }
        }
        for (std::size_t i = 0; i < branches.size(); ++i) {
          branches[i].samples.push_back({tb, zb[i]});
          if (zb[i].imag() >= -kAxisTolerance)
            branches[i].events.push_back({EventKind::real_axis_touch, tb, zb[i]});
        }
        return branches;
      }

      t = tn;
      current = next;
      if (min_pairwise_distance(current) < kMergeDistance) {
        std::vector<std::size_t> involved;
        for (std::size_t i = 0; i < current.size(); ++i)
          for (std::size_t j = 0; j < current.size(); ++j)
            if (i != j && std::abs(current[i] - current[j]) < kMergeDistance) {
              involved.push_back(i);
              break;
            }
        cplx centre{};
        for (const std::size_t i : involved) centre += current[i];
        centre /= static_cast<double>(involved.size());
        for (const std::size_t i : involved) {
          branches[i].samples.push_back({t, current[i]});
          branches[i].events.push_back({EventKind::merge, t, centre});
        }
        merged = true;

        // Continue from the next grid time; the merged zeros are re-paired by
        // ordering (largest imaginary part to the lowest branch id).
        double resume = target > t ? target : t0 + static_cast<double>(k + 1) * dt;
        if (resume > t1) return branches;
        std::vector<cplx> next_all = expand(zeros_at_time(zeta0, resume));
        if (next_all.size() != current.size()) throw NoConvergence("zero count changed after a merge");
        std::vector<cplx> others;
        std::vector<std::size_t> other_idx;
        for (std::size_t i = 0; i < current.size(); ++i)
          if (std::find(involved.begin(), involved.end(), i) == involved.end()) {
            others.push_back(current[i]);
            other_idx.push_back(i);
          }
        std::vector<bool> used(next_all.size(), false);
        std::vector<cplx> assigned(current.size());
        const auto m = match_nearest(others, next_all);
        for (std::size_t q = 0; q < others.size(); ++q) {
          assigned[other_idx[q]] = next_all[m[q]];
          used[m[q]] = true;
        }
        std::vector<cplx> rest;
        for (std::size_t j = 0; j < next_all.size(); ++j)
          if (!used[j]) rest.push_back(next_all[j]);
        std::sort(rest.begin(), rest.end(), [](cplx a, cplx b) { return a.imag() > b.imag(); });
        std::vector<std::size_t> ids = involved;
        std::sort(ids.begin(), ids.end());
        for (std::size_t q = 0; q < ids.size() && q < rest.size(); ++q) assigned[ids[q]] = rest[q];
        current = assigned;
        t = resume;
        if (resume > target) ++k;
        target = resume;
      }
    }
    for (std::size_t i = 0; i < branches.size(); ++i) branches[i].samples.push_back({t, current[i]});
  }
  return branches;
}

TouchResult first_touch(const RationalFunction& zeta0, double t_max) {
  const auto g = [&](double t) { return max_imag(expand(zeros_at_time(zeta0, t))); };
  constexpr int kSteps = 4000;
  double prev = 0.0;
  if (g(0.0) >= -kAxisTolerance) throw InvalidArgument("zeta0 already has a zero on the real axis");
  double hit = -1.0;
  for (int k = 1; k <= kSteps; ++k) {
    const double t = t_max * k / kSteps;
    if (g(t) >= -kAxisTolerance) {
      hit = t;
      break;
    }
    prev = t;
  }
  if (hit < 0.0) throw NoTouch("no zero of zeta reaches the real axis up to t = " + std::to_string(t_max));
  double a = prev, b = hit;
  while (b - a > 1e-12) {
    const double m = 0.5 * (a + b);
    if (g(m) >= -kAxisTolerance) {
      b = m;
    } else {
      a = m;
    }
  }
  const double coarse = b;

  // A real touch point x solves Re zeta0(x) = 0 with T = -2 Im zeta0(x).
  const Polynomial cross = zeta0.num() * zeta0.den().conj_coeffs();
  std::vector<cplx> rc(cross.coeffs().size());
  std::transform(cross.coeffs().begin(), cross.coeffs().end(), rc.begin(), [](cplx c) { return cplx{c.real(), 0.0}; });
  const Polynomial re_poly = Polynomial(rc).cleaned(1e-14);
  struct Candidate {
    double x, T;
  };
  std::vector<Candidate> cands;
  if (re_poly.degree() >= 1) {
    const Polynomial dre = re_poly.derivative();
    for (const Root& r : roots(re_poly)) {
      if (std::abs(r.value.imag()) > 1e-6 * (1.0 + std::abs(r.value))) continue;
      double x = r.value.real();
      if (r.multiplicity == 1) {
        for (int it = 0; it < 5; ++it) {
          const double d = dre(x).real();
          if (d == 0.0) break;
          const double step = re_poly(x).real() / d;
          if (!std::isfinite(step) || std::abs(step) > 1e-6 * (1.0 + std::abs(x))) break;
          x -= step;
        }
      }
      const double T = -2.0 * zeta0(x).imag();
      if (T > 0.0 && std::abs(T - coarse) <= 1e-3 * (1.0 + coarse)) cands.push_back({x, T});
    }
  }
  TouchResult out;
  if (cands.empty()) {
    out.T = coarse;
    for (const cplx z : expand(zeros_at_time(zeta0, coarse)))
      if (z.imag() >= -kAxisTolerance) out.points.push_back(z.real());
  } else {
    out.T = std::min_element(cands.begin(), cands.end(), [](const Candidate& p, const Candidate& q) { return p.T < q.T; })->T;
    for (const Candidate& c : cands)
      if (c.T - out.T <= 1e-10 * (1.0 + out.T)) out.points.push_back(c.x);
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end(),
                               [](double p, double q) { return std::abs(p - q) <= 1e-8 * (1.0 + std::abs(p)); }),
                   out.points.end());
  return out;
}

PoleTrajectory sample_near_touch(const RationalFunction& zeta0, double T, double x_star,
                                 std::span<const double> taus) {
  const Polynomial num_s = zeta0.num().taylor_shift(x_star);
  const Polynomial den_s = zeta0.den().taylor_shift(x_star);
  const cplx c0 = num_s.coeff(0) / den_s.coeff(0);
  std::vector<cplx> centred(std::max(num_s.coeffs().size(), den_s.coeffs().size()), cplx{});
  for (std::size_t k = 0; k < centred.size(); ++k)
    centred[k] = num_s.coeff(static_cast<int>(k)) - c0 * den_s.coeff(static_cast<int>(k));
  centred[0] = 0.0;
  const Polynomial base(centred);
  const cplx mismatch = c0 + kI * (T / 2.0);

  PoleTrajectory traj;
  traj.source = TrajectorySource::algebraic;
  std::vector<double> sorted(taus.begin(), taus.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (const double tau : sorted) {
    const Polynomial q = base + (mismatch - kI * (tau / 2.0)) * den_s;
    std::vector<Root> rs = roots(q);
    std::erase_if(rs, [&](const Root& r) {
      return std::abs(den_s(r.value)) <= 1e-10 * den_s.abs_scale(std::abs(r.value));
    });
    if (rs.empty()) throw NoConvergence("no zero near the touch point");
    std::size_t best = 0;
    for (std::size_t i = 1; i < rs.size(); ++i) {
      const double di = std::abs(rs[i].value), db = std::abs(rs[best].value);
      if (di < db * (1.0 - 1e-6) || (di <= db * (1.0 + 1e-6) && rs[i].value.real() > rs[best].value.real()))
        best = i;
    }
    traj.samples.push_back({T - tau, x_star + rs[best].value});
  }
  return traj;
}

LocalExponents local_exponents(const PoleTrajectory& traj, double T, double x_star) {
  std::vector<double> taus, xs, ys;
  bool fixed = true;
  for (const TrajectorySample& s : traj.samples) {
    const double tau = T - s.t;
    if (tau < 1e-6 * (1.0 - 1e-9) || tau > 1e-2 * (1.0 + 1e-9)) continue;
    taus.push_back(tau);
    const double dx = std::abs(s.z.real() - x_star);
    xs.push_back(dx);
    ys.push_back(std::abs(s.z.imag()));
    if (dx > 1e-12 * (1.0 + std::abs(x_star))) fixed = false;
  }
  if (taus.size() < 3) throw UnclassifiableTrajectory("fewer than three samples with T - t in [1e-6, 1e-2]");

  LocalExponents le;
  le.x_fixed = fixed;
  le.alpha_x = fixed ? std::numeric_limits<double>::quiet_NaN() : fit_power_law(taus, xs).exponent;
  le.alpha_y = fit_power_law(taus, ys).exponent;
  const long n = std::lround(le.alpha_y);
  if (std::abs(le.alpha_y) <= 0.05) {
    le.classification = TrajectoryClass::traveling;
  } else if ((fixed || std::abs(le.alpha_x - 1.0) <= 0.1) && std::abs(le.alpha_y - 1.0) <= 0.1) {
    le.classification = TrajectoryClass::one_scale;
  } else if (!fixed && std::abs(le.alpha_x - 0.5) <= 0.1 && n >= 1 && std::abs(le.alpha_y - static_cast<double>(n)) <= 0.2) {
    le.classification = TrajectoryClass::two_scale;
    le.n = static_cast<int>(n);
  }
  return le;
}

std::pair<double, double> xy_ode_rhs(const RationalFunction& zeta0, double X, double Y) {
  const cplx d = zeta0.eval_derivative({X, Y});
  const double ax = d.real(), bx = d.imag();
  const double norm = ax * ax + bx * bx;
  if (!(norm > 0.0) || std::sqrt(norm) <= 1e-14 * std::max(1.0, std::abs(zeta0({X, Y}))))
    throw DerivativeVanishes("zeta0' vanishes at the given point");
  return {-bx / (2.0 * norm), -ax / (2.0 * norm)};
}

TheoremParams to_local_normalization(const TheoremParams& thm) {
  TheoremParams loc = thm;
  loc.a = 2.0 * thm.a;
  loc.b = 2.0 * thm.b;
  loc.c = thm.n == 0 ? 2.0 * thm.c : 4.0 * thm.c;
  return loc;
}

ShapeRelation shape_relation_check(const PoleTrajectory& traj, const TheoremParams& local, double T) {
  const int n = local.n;
  if (n < 1 || !(local.b > 0.0)) throw InvalidArgument("shape relations need n >= 1 and b > 0");
  std::vector<double> X, Yabs, res, res_ratio, taus, x2res;
  double smallest_tau = std::numeric_limits<double>::infinity();
  ShapeRelation out;
  const double k_shape = local.c / (2.0 * local.b);
  const double k_x2 = local.a * local.a / (2.0 * local.b);
  for (const TrajectorySample& s : traj.samples) {
    const double x = s.z.real(), y = s.z.imag(), tau = T - s.t;
    if (!(x > 0.0) || !(tau > 0.0)) continue;
    X.push_back(x);
    Yabs.push_back(std::abs(y));
    const double r = y + k_shape * std::pow(x, 2 * n);
    res.push_back(r);
    res_ratio.push_back(std::abs(r) / std::pow(x, 2 * n + 1));
    taus.push_back(tau);
    x2res.push_back(x * x - k_x2 * tau);
    if (tau < smallest_tau) {
      smallest_tau = tau;
      out.x2_leading_ratio = x * x / (k_x2 * tau);
    }
  }
  if (X.size() < 3) throw InvalidArgument("shape relations need at least three samples with X > 0");
  out.slope_y_vs_x = fit_power_law(X, Yabs).exponent;
  out.slope_shape_residual = fit_power_law(X, res).exponent;
  out.max_shape_ratio = *std::max_element(res_ratio.begin(), res_ratio.end());
  out.slope_x2_residual = fit_power_law(taus, x2res).exponent;
  return out;
}

}  // namespace clm
