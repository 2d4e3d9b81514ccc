#include <cmath>

#include "doctest.h"

#include "clm/error.hpp"
#include "clm/presets.hpp"
#include "clm/spectral.hpp"

using namespace clm;

TEST_CASE("config validation") {
  EvolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.n = 1000;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.n = 128;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = EvolverConfig{};
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = EvolverConfig{};
  c.method = HilbertMethod::quadrature;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("Example I to t = 0.5 matches the closed form") {
  EvolverConfig c;
  const EvolverRun run = evolve(find_preset("I").datum(), c);
  REQUIRE(run.stopped_reason == StopReason::reached_t_end);
  CHECK(run.snapshots.back().t == doctest::Approx(0.5));
  CHECK(sup_relative_deviation(run.snapshots.back(), find_preset("I").datum()) <= 1e-6);
}

TEST_CASE("zero data stay zero") {
  EvolverConfig c;
  c.n = 256;
  c.t_end = 0.3;
  std::vector<double> zero(256, 0.0);
  const EvolverRun run = evolve(zero, c);
  for (const double v : run.snapshots.back().omega) CHECK(v == 0.0);
}

TEST_CASE("Example VI travels with unit speed") {
  const Preset& p = find_preset("VI");
  EvolverConfig c;
  c.t_end = 2.0;
  const EvolverRun run = evolve(p.datum(), c);
  const SolutionSnapshot& s = run.snapshots.back();
  double e = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    if (std::abs(s.xs[i]) > 10.0) continue;
    e = std::max(e, std::abs(s.omega[i] - p.omega0(s.xs[i] - 2.0)));
    peak = std::max(peak, s.omega[i]);
  }
  CHECK(e <= 1e-4);
  CHECK(std::abs(peak - 2.0) <= 1e-3);
}

TEST_CASE("guard trips near blowup without throwing") {
  EvolverConfig c;
  c.n = 1024;
  c.t_end = 0.9995;
  c.guard = 1e3;
  const EvolverRun run = evolve(find_preset("I").datum(), c);
  CHECK(run.stopped_reason == StopReason::guard_tripped);
  CHECK(run.snapshots.back().t < 0.9995);
  CHECK_FALSE(run.halvings.empty());
}

TEST_CASE("non-decaying data are rejected") {
  EvolverConfig c;
  c.n = 256;
  std::vector<double> flat(256, 1.0);
  CHECK_THROWS_AS(evolve(flat, c), DomainTooSmall);
}

TEST_CASE("snapshot cadence") {
  EvolverConfig c;
  c.n = 512;
  c.t_end = 0.3;
  c.snapshot_interval = 0.1;
  const EvolverRun run = evolve(find_preset("III").datum(), c);
  REQUIRE(run.snapshots.size() == 4);
  for (std::size_t i = 1; i < run.snapshots.size(); ++i) CHECK(run.snapshots[i].t > run.snapshots[i - 1].t);
}

TEST_CASE("temporal order four") {
  EvolverConfig c;
  c.t_end = 0.5;
  c.dt = 0.05;
  const auto rows = convergence_study(find_preset("I").datum(), c, 3, Refine::dt);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].ratio == doctest::Approx(16.0).epsilon(0.2));
  }
}

TEST_CASE("t_end = 0 gives zero error rows") {
  EvolverConfig c;
  c.n = 256;
  c.t_end = 0.0;
  for (const ConvergenceRow& r : convergence_study(find_preset("I").datum(), c, 2)) CHECK(r.error <= 1e-15);
}

TEST_CASE("property: odd data stay odd") {
  EvolverConfig c;
  c.n = 1024;
  c.t_end = 0.4;
  const EvolverRun run = evolve(find_preset("II").datum(), c);
  const SolutionSnapshot& s = run.snapshots.back();
  const std::size_t n = s.xs.size();
  double m = 0.0;
  for (const double v : s.omega) m = std::max(m, std::abs(v));
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s.omega[i] + s.omega[n - 1 - i]) <= 1e-12 * m);
}

TEST_CASE("property: every rational preset matches the closed form at 0.5 T") {
  for (const Preset& p : presets()) {
    CAPTURE(p.id);
    EvolverConfig c;
    c.t_end = p.T ? 0.5 * *p.T : 1.0;
    const EvolverRun run = evolve(p.datum(), c);
    CHECK(sup_relative_deviation(run.snapshots.back(), p.datum()) <= 1e-6);
  }
}
