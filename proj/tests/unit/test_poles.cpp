#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "clm/error.hpp"
#include "clm/exact.hpp"
#include "clm/fitting.hpp"
#include "clm/poles.hpp"
#include "clm/presets.hpp"

using namespace clm;

namespace {

constexpr cplx I{0.0, 1.0};

RationalFunction zeta(const char* id) { return find_preset(id).zeta0(); }

bool contains(const std::vector<Root>& rs, cplx z, int mult, double tol) {
  return std::any_of(rs.begin(), rs.end(),
                     [&](const Root& r) { return r.multiplicity == mult && std::abs(r.value - z) <= tol; });
}

}  // namespace

TEST_CASE("zeros at given times") {
  auto i = zeros_at_time(zeta("I"), 0.5);
  REQUIRE(i.size() == 1);
  CHECK(std::abs(i[0].value + 0.5 * I) < 1e-14);

  auto iii = zeros_at_time(ZetaState{zeta("III"), 0.6});
  REQUIRE(iii.size() == 2);
  CHECK(contains(iii, cplx{0.8, -0.4}, 1, 1e-13));
  CHECK(contains(iii, cplx{-0.8, -0.4}, 1, 1e-13));

  auto ii = zeros_at_time(zeta("II"), 0.8);
  REQUIRE(ii.size() == 1);
  CHECK(ii[0].multiplicity == 2);
  CHECK(std::abs(ii[0].value + 0.5 * I) < 1e-7);

  auto v = zeros_at_time(zeta("V"), 0.0);
  REQUIRE(v.size() == 1);
  CHECK(v[0].multiplicity == 3);
}

TEST_CASE("property: zero count is constant in t") {
  for (const Preset& p : presets()) {
    CAPTURE(p.id);
    const RationalFunction z = p.zeta0();
    const double t_end = p.T ? *p.T : 10.0;
    auto count = [&](double t) {
      int c = 0;
      for (const Root& r : zeros_at_time(z, t)) c += r.multiplicity;
      return c;
    };
    const int c0 = count(0.0);
    for (int k = 1; k <= 50; ++k) CHECK(count(t_end * k / 50.0) == c0);
  }
}

TEST_CASE("ODE trajectories") {
  const PoleTrajectory i = integrate_trajectory(zeta("I"), -I, 0.0, 2.0, 0.01);
  for (const TrajectorySample& s : i.samples) CHECK(std::abs(s.z - I * (s.t - 1.0)) < 1e-8);
  REQUIRE(i.events.size() == 1);
  CHECK(i.events[0].kind == EventKind::real_axis_touch);
  CHECK(std::abs(i.events[0].t - 1.0) < 1e-8);
  CHECK(std::abs(i.events[0].z.real()) < 1e-12);

  const PoleTrajectory vi = integrate_trajectory(zeta("VI"), -I, 0.0, 10.0, 0.1);
  CHECK(vi.events.empty());
  for (const TrajectorySample& s : vi.samples) CHECK(std::abs(s.z - cplx{s.t, -1.0}) < 1e-8);

  const PoleTrajectory iii = integrate_trajectory(zeta("III"), cplx{1.0, -1.0}, 0.0, 1.0, 0.01);
  for (const TrajectorySample& s : iii.samples) {
    if (s.t >= 1.0) continue;
    CHECK(std::abs(s.z - cplx{std::sqrt(1.0 - s.t * s.t), s.t - 1.0}) < 1e-8);
  }
}

TEST_CASE("ODE stops at a merge") {
  const auto seeds = zeros_at_time(zeta("II"), 0.0);
  REQUIRE(seeds.size() == 2);
  const PoleTrajectory t = integrate_trajectory(zeta("II"), seeds[0].value, 0.0, 1.0, 0.01);
  REQUIRE(t.events.size() == 1);
  CHECK(t.events[0].kind == EventKind::merge);
  CHECK(std::abs(t.events[0].t - 0.8) < 1e-6);
  CHECK_THROWS_AS(integrate_trajectory(zeta("V"), -I, 0.0, 1.0, 0.1), DerivativeVanishes);
}

TEST_CASE("algebraic tracking: merge in Example II") {
  const auto branches = track_zeros(zeta("II"), 0.0, 1.1, 0.01);
  REQUIRE(branches.size() == 2);
  int merges = 0, touches = 0;
  for (const PoleTrajectory& b : branches)
    for (const TrajectoryEvent& e : b.events) {
      if (e.kind == EventKind::merge) {
        ++merges;
        CHECK(std::abs(e.t - 0.8) <= 1e-9);
        CHECK(std::abs(e.z + 0.5 * I) <= 1e-6);
      }
      if (e.kind == EventKind::real_axis_touch) {
        ++touches;
        CHECK(std::abs(e.t - 1.0) <= 1e-8);
      }
    }
  CHECK(merges == 2);
  CHECK(touches == 1);
}

TEST_CASE("algebraic tracking: Example V branches into three") {
  const auto branches = track_zeros(zeta("V"), 0.0, 6.0, 0.01);
  REQUIRE(branches.size() == 3);
  int touching = 0;
  for (const PoleTrajectory& b : branches) {
    CHECK(b.events.front().kind == EventKind::branch);
    CHECK(std::abs(b.samples.front().z + I) < 1e-6);
    for (const TrajectoryEvent& e : b.events)
      if (e.kind == EventKind::real_axis_touch) {
        ++touching;
        CHECK(std::abs(e.z.real()) < 1e-2);
      }
  }
  CHECK(touching == 2);
}

TEST_CASE("property: algebraic and ODE routes agree") {
  for (const char* id : {"I", "III", "IV", "VI"}) {
    CAPTURE(id);
    const RationalFunction z = zeta(id);
    const auto branches = track_zeros(z, 0.0, 0.9, 0.01);
    for (const PoleTrajectory& b : branches) {
      const PoleTrajectory ode = integrate_trajectory(z, b.samples.front().z, 0.0, 0.9, 0.01);
      const std::size_t n = std::min(ode.samples.size(), b.samples.size());
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(ode.samples[k].t == doctest::Approx(b.samples[k].t));
        CHECK(std::abs(ode.samples[k].z - b.samples[k].z) < 1e-8);
      }
    }
  }
}

TEST_CASE("property: samples lie on the zero set") {
  for (const char* id : {"II", "III", "V"}) {
    const RationalFunction z = zeta(id);
    for (const PoleTrajectory& b : track_zeros(z, 0.0, 0.5, 0.05))
      for (const TrajectorySample& s : b.samples) {
        const cplx v = z.num()(s.z) + I * (s.t / 2.0) * z.den()(s.z);
        CHECK(std::abs(v) <= 1e-9 * z.num().abs_scale(std::abs(s.z)) + 1e-9);
        CHECK(s.z.imag() < 0.0);
      }
  }
}

TEST_CASE("property: symmetric presets give mirrored trajectories") {
  for (const char* id : {"II", "III", "IV", "V"}) {
    CAPTURE(id);
    for (const double t : {0.1, 0.37, 0.75}) {
      const auto rs = zeros_at_time(zeta(id), t);
      for (const Root& r : rs) CHECK(contains(rs, -std::conj(r.value), r.multiplicity, 1e-8));
    }
  }
}

TEST_CASE("first touch") {
  const TouchResult iv = first_touch(zeta("IV"));
  CHECK(std::abs(iv.T - 1.0) < 1e-8);
  REQUIRE(iv.points.size() == 2);
  CHECK(std::abs(iv.points[0] + std::sqrt(3.0)) < 1e-8);
  CHECK(std::abs(iv.points[1] - std::sqrt(3.0)) < 1e-8);

  const TouchResult v = first_touch(zeta("V"));
  CHECK(std::abs(v.T - 16.0 / 3.0) < 1e-8);
  REQUIRE(v.points.size() == 1);
  CHECK(std::abs(v.points[0]) < 1e-8);

  CHECK_THROWS_AS(first_touch(zeta("VI"), 100.0), NoTouch);
}

TEST_CASE("property: first touch agrees with the blowup set") {
  for (const char* id : {"I", "II", "III", "IV", "V"}) {
    CAPTURE(id);
    const Preset& p = find_preset(id);
    const TouchResult a = first_touch(p.zeta0());
    const BlowupPrediction b = predict_blowup(make_datum(p.zeta0().reciprocal(), id));
    CHECK(std::abs(a.T - b.T) < 1e-8);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) CHECK(std::abs(a.points[k] - b.points[k]) < 1e-8);
  }
}

TEST_CASE("local exponents") {
  const auto taus = log_spaced(1e-6, 1e-2, 30);
  const auto run = [&](const char* id, double x) {
    const Preset& p = find_preset(id);
    return local_exponents(sample_near_touch(p.zeta0(), *p.T, x, taus), *p.T, x);
  };
  const LocalExponents iii = run("III", 0.0);
  CHECK(std::abs(iii.alpha_x - 0.5) <= 0.02);
  CHECK(std::abs(iii.alpha_y - 1.0) <= 0.05);
  CHECK(iii.classification == TrajectoryClass::two_scale);
  CHECK(iii.n == 1);

  const LocalExponents v = run("V", 0.0);
  CHECK(std::abs(v.alpha_x - 0.5) <= 0.02);
  CHECK(std::abs(v.alpha_y - 2.0) <= 0.1);
  CHECK(v.classification == TrajectoryClass::two_scale);
  CHECK(v.n == 2);

  const LocalExponents ii = run("II", 0.0);
  CHECK(ii.x_fixed);
  CHECK(std::abs(ii.alpha_y - 1.0) <= 0.05);
  CHECK(ii.classification == TrajectoryClass::one_scale);

  PoleTrajectory flat;
  for (const double tau : taus) flat.samples.push_back({1.0 - tau, cplx{1.0 - tau, -1.0}});
  CHECK(local_exponents(flat, 1.0).classification == TrajectoryClass::traveling);
  PoleTrajectory short_traj;
  short_traj.samples.push_back({0.5, -I});
  CHECK_THROWS_AS(local_exponents(short_traj, 1.0), UnclassifiableTrajectory);
}

TEST_CASE("coordinate ODE matches the complex form") {
  const RationalFunction z = zeta("III");
  const auto [xd, yd] = xy_ode_rhs(z, 0.8, -0.4);
  const cplx want = -I / (2.0 * z.eval_derivative(cplx{0.8, -0.4}));
  CHECK(std::abs(xd - want.real()) < 1e-12);
  CHECK(std::abs(yd - want.imag()) < 1e-12);

  const auto [x1, y1] = xy_ode_rhs(zeta("I"), 0.0, -0.5);
  CHECK(std::abs(x1) < 1e-15);
  CHECK(y1 == doctest::Approx(1.0));
  const auto [x6, y6] = xy_ode_rhs(zeta("VI"), 0.0, -1.0);
  CHECK(x6 == doctest::Approx(1.0));
  CHECK(std::abs(y6) < 1e-15);
  CHECK_THROWS_AS(xy_ode_rhs(zeta("V"), 0.0, -1.0), DerivativeVanishes);
}

TEST_CASE("local normalization") {
  const TheoremParams loc = to_local_normalization(make_params(1.0, 0.5, 0.25, 1));
  CHECK(loc.a == 2.0);
  CHECK(loc.b == 1.0);
  CHECK(loc.c == 1.0);
  CHECK(to_local_normalization(make_params(1.0, 0.0, 1.0, 0)).c == 2.0);
}

TEST_CASE("shape relations") {
  const auto taus = log_spaced(1e-6, 1e-2, 30);
  const Preset& iii = find_preset("III");
  const ShapeRelation s3 = shape_relation_check(sample_near_touch(iii.zeta0(), 1.0, 0.0, taus),
                                                to_local_normalization(make_params(1.0, 0.5, 0.25, 1)), 1.0);
  CHECK(s3.slope_y_vs_x == doctest::Approx(2.0).epsilon(0.01));
  CHECK(s3.slope_shape_residual >= 3.8);
  CHECK(s3.slope_x2_residual == doctest::Approx(2.0).epsilon(0.01));
  CHECK(s3.x2_leading_ratio == doctest::Approx(1.0).epsilon(1e-4));

  const Preset& v = find_preset("V");
  const ShapeRelation s5 =
      shape_relation_check(sample_near_touch(v.zeta0(), 16.0 / 3.0, 0.0, taus),
                           to_local_normalization(make_params(3.0 / 16.0, 1.0 / 16.0, 0.25, 2)), 16.0 / 3.0);
  CHECK(std::abs(s5.slope_y_vs_x - 4.0) <= 0.1);
}
