#include <cmath>

#include "doctest.h"

#include "clm/asymptotics.hpp"
#include "clm/error.hpp"
#include "clm/presets.hpp"

using namespace clm;

namespace {

double slope(const std::vector<ProfileError>& rows, bool hilbert = false) {
  std::vector<double> t, e;
  for (const ProfileError& r : rows) {
    t.push_back(r.tau);
    e.push_back(hilbert ? r.err_hilbert : r.err_omega);
  }
  return fit_power_law(t, e).exponent;
}

std::vector<ProfileError> errors(const char* id, int n, std::initializer_list<double> taus) {
  const InitialDatum d = find_preset(id).datum();
  const TheoremParams p = extract_params(d, n);
  std::vector<ProfileError> rows;
  for (const double tau : taus) rows.push_back(profile_error(d, p, tau));
  return rows;
}

std::vector<SolutionSnapshot> snapshots(const InitialDatum& d) {
  std::vector<SolutionSnapshot> s;
  for (const double tau : log_spaced(1e-5, 1e-2, 40)) s.push_back(peak_resolving_snapshot(d, tau));
  return s;
}

}  // namespace

TEST_CASE("parameters of the presets") {
  const TheoremParams iii = extract_params(find_preset("III").datum(), 1);
  CHECK(iii.a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(iii.b == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(iii.c == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(iii.T == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(iii.rT == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const TheoremParams v = extract_params(find_preset("V").datum(), 2);
  CHECK(v.a == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
  CHECK(v.b == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  CHECK(v.c == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(v.T == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  CHECK(v.rT == doctest::Approx(0.75).epsilon(1e-12));

  const TheoremParams i = extract_params(find_preset("I").datum(), 0);
  CHECK(i.a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(i.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(i.T == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wrong degeneracy") {
  CHECK_THROWS_AS(extract_params(find_preset("III").datum(), 0), WrongDegeneracy);
  CHECK_THROWS_AS(extract_params(find_preset("I").datum(), 1), WrongDegeneracy);
  CHECK_THROWS_AS(extract_params(find_preset("V").datum(), 1), WrongDegeneracy);
  CHECK_THROWS_AS(extract_params(find_preset("VI").datum(), 0), WrongDegeneracy);
}

TEST_CASE("property: round trip through sampled traces") {
  for (int n = 1; n <= 3; ++n) {
    const double a = 0.7, b = 0.3 * n, c = 0.45;
    const InitialDatum d{BoundaryTrace(
                             [=](double x) { return -4.0 * c * std::pow(x, 2 * n + 1) * std::exp(-x * x); },
                             [=](double x) { return 2.0 * a + 2.0 * b * x * x * std::exp(-x * x); }),
                         -1, true, true, "sampled"};
    const TheoremParams p = extract_params(d, n);
    CAPTURE(n);
    CHECK(p.a == doctest::Approx(a).epsilon(1e-6));
    CHECK(p.b == doctest::Approx(b).epsilon(1e-6));
    CHECK(p.c == doctest::Approx(c).epsilon(1e-6));
  }
}

TEST_CASE("profiles") {
  const ProfileSpec v = ProfileSpec::for_params(make_params(3.0 / 16.0, 1.0 / 16.0, 0.25, 2));
  CHECK(v.kind == ProfileKind::omega2n);
  CHECK(profile(v, 0.0).omega == doctest::Approx(-3888.0 / 6561.0).epsilon(1e-14));
  for (const double z : {-2.0, 0.3, 5.0})
    CHECK(profile(v, z).omega == doctest::Approx(-3888.0 / (6561.0 + 4096.0 * z * z)).epsilon(1e-13));
  CHECK(profile(v, 0.0).hilbert_omega == 0.0);

  const ProfileSpec o1 = ProfileSpec::for_params(make_params(1.0, 0.0, 1.0, 0));
  CHECK(std::abs(profile(o1, 1e8).omega) < 1e-7);
  CHECK(std::abs(profile(o1, -1e8).omega) < 1e-7);

  const ProfileSpec iii = ProfileSpec::for_params(make_params(1.0, 0.5, 0.25, 1));
  CHECK(std::abs(profile(iii, 0.0).omega) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  for (double z = 0.01; z < 10.0; z *= 1.7)
    CHECK(std::abs(profile(iii, z).omega) < std::abs(profile(iii, 0.0).omega));

  ProfileSpec bad = iii;
  bad.kind = ProfileKind::omega1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("p and q") {
  const InitialDatum d = find_preset("V").datum();
  const TheoremParams p = extract_params(d, 2);
  CHECK(p_function(d, p, 0.0) == 1.0);
  CHECK(q_function(d, p, 0.0) == 1.0);
  CHECK(q_function(d, p, 0.1) == doctest::Approx(1.0285343797589248).epsilon(1e-12));
  for (double x = 0.05; x < 2.0; x += 0.13) {
    CHECK(q_function(d, p, -x) == doctest::Approx(q_function(d, p, x)).epsilon(1e-13));
    CHECK(p_function(d, p, -x) == doctest::Approx(p_function(d, p, x)).epsilon(1e-13));
  }
  CHECK(pq_validity_radius(d, p) > 0.3);
}

TEST_CASE("r(t)") {
  const InitialDatum v = find_preset("V").datum();
  const TheoremParams pv = extract_params(v, 2);
  // Independent high-precision solve of r^2 q(r sqrt(T - t)) = a / (b t).
  CHECK(r_of_t(v, pv, pv.T - 0.1) == doctest::Approx(0.71585323387116674).epsilon(1e-10));
  CHECK(r_of_t(v, pv, pv.T - 0.01) == doctest::Approx(0.74470288985902776).epsilon(1e-10));
  CHECK(r_of_t(v, pv, pv.T - 1e-9) == doctest::Approx(0.75).epsilon(1e-8));
  // First-order agreement with 3/4 - (9/16)(T - t).
  for (const double tau : {1e-2, 1e-3, 1e-4})
    CHECK(std::abs(r_of_t(v, pv, pv.T - tau) - (0.75 - 9.0 / 16.0 * tau)) <= 4.0 * tau * tau);

  const InitialDatum iii = find_preset("III").datum();
  const TheoremParams p3 = extract_params(iii, 1);
  for (const double tau : {1e-1, 1e-2, 1e-3, 1e-4})
    CHECK(std::abs(r_of_t(iii, p3, 1.0 - tau) - std::sqrt(2.0)) <= 3.0 * tau);
}

TEST_CASE("property: r(t) is monotone and Lipschitz in T - t") {
  for (const char* id : {"III", "III-fig", "V"}) {
    CAPTURE(id);
    const InitialDatum d = find_preset(id).datum();
    const TheoremParams p = extract_params(d, find_preset(id).n);
    double worst = 0.0;
    for (const double tau : log_spaced(1e-6, 0.1, 60)) {
      const double r = r_of_t(d, p, p.T - tau);
      worst = std::max(worst, std::abs(r - p.rT) / tau);
    }
    CHECK(worst < 2.0);
    const auto taus = log_spaced(1e-6, 0.1, 60);
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < taus.size(); ++i) {
      const double a = r_of_t(d, p, p.T - taus[i - 1]), b = r_of_t(d, p, p.T - taus[i]);
      inc = inc && b >= a;
      dec = dec && b <= a;
    }
    CHECK((inc || dec));
  }
}

TEST_CASE("profile error: exact self-similarity of Example I") {
  for (const ProfileError& e : errors("I", 0, {0.5, 1e-1, 1e-3, 1e-6})) {
    CHECK(e.err_omega <= 1e-12);
    CHECK(e.err_hilbert <= 1e-12);
  }
}

TEST_CASE("profile error rates") {
  CHECK(slope(errors("II", 0, {1e-2, 1e-3, 1e-4})) == doctest::Approx(1.0).epsilon(0.1));
  CHECK(slope(errors("III", 1, {1e-2, 1e-3, 1e-4})) == doctest::Approx(0.5).epsilon(0.2));
  CHECK(slope(errors("III", 1, {1e-2, 1e-3, 1e-4}), true) == doctest::Approx(0.5).epsilon(0.2));
  // For n >= 2 the shift tau^n z is o(sqrt(tau) tau^(n-1)), so the O(x^2)
  // corrections of p and q dominate and the error decays like T - t.
  CHECK(slope(errors("V", 2, {1e-2, 1e-3, 1e-4})) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("scaling exponents") {
  const InitialDatum i = find_preset("I").datum();
  const ScalingReport ri = measure_scales(snapshots(i), 1.0, &i);
  CHECK(ri.c_omega == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(ri.c_l == doctest::Approx(1.0).epsilon(0.02));
  CHECK(ri.c_s_degenerate);

  const InitialDatum iii = find_preset("III").datum();
  const ScalingReport r3 = measure_scales(snapshots(iii), 1.0, &iii);
  CHECK(std::abs(r3.c_omega + 1.5) <= 0.05);
  CHECK(std::abs(r3.c_l - 1.0) <= 0.05);
  CHECK(std::abs(r3.c_s - 0.5) <= 0.02);
  CHECK(std::abs(r3.power_relation_defect) <= 0.05);
  CHECK_FALSE(r3.c_s_degenerate);

  const InitialDatum v = find_preset("V").datum();
  const ScalingReport r5 = measure_scales(snapshots(v), 16.0 / 3.0, &v);
  CHECK(std::abs(r5.c_omega + 2.5) <= 0.1);
  CHECK(std::abs(r5.c_l - 2.0) <= 0.1);
  CHECK(std::abs(r5.c_s - 0.5) <= 0.02);
  CHECK(std::abs(r5.power_relation_defect) <= 0.05);
}

TEST_CASE("scaling from plain snapshots without the closed form") {
  const InitialDatum iii = find_preset("III").datum();
  const ScalingReport r = measure_scales(snapshots(iii), 1.0);
  CHECK(std::abs(r.c_omega + 1.5) <= 0.05);
  CHECK(std::abs(r.c_s - 0.5) <= 0.05);
}

TEST_CASE("scaling preconditions") {
  const InitialDatum iii = find_preset("III").datum();
  std::vector<SolutionSnapshot> few;
  for (const double tau : log_spaced(1e-3, 1e-2, 8)) few.push_back(peak_resolving_snapshot(iii, tau));
  CHECK_THROWS_AS(measure_scales(few, 1.0, &iii), InsufficientDecades);
  std::vector<SolutionSnapshot> narrow;
  const std::vector<double> xs{-0.01, 0.0, 0.005, 0.01};
  for (const double tau : log_spaced(1e-5, 1e-2, 8)) narrow.push_back(snapshot_before_blowup(iii, xs, tau));
  CHECK_THROWS_AS(measure_scales(narrow, 1.0), PeakOnBoundary);
}

TEST_CASE("traveling waves") {
  for (double x = -5.0; x <= 5.0; x += 0.1) {
    const TravelingWaveValue w = traveling_wave_profile(-1.0, 1.0, x);
    CHECK(w.f == doctest::Approx(2.0 / (1.0 + x * x)).epsilon(1e-15));
    CHECK(std::abs(w.residual) <= 1e-12);
    CHECK(traveling_wave_profile(0.0, 1.0, x).f == 0.0);
    CHECK(std::abs(traveling_wave_profile(2.5, 0.7, x).residual) <= 1e-12);
  }
  CHECK_THROWS_AS(traveling_wave_profile(1.0, 0.0, 0.0), InvalidArgument);
}
