#include <cmath>
#include <random>

#include "doctest.h"

#include "clm/error.hpp"
#include "clm/exact.hpp"
#include "clm/presets.hpp"

using namespace clm;

TEST_CASE("t = 0 returns the trace") {
  for (const Preset& p : presets()) {
    const InitialDatum d = p.datum();
    for (double x = -4.0; x <= 4.0; x += 0.5) {
      const FieldValue v = evaluate(d, x, 0.0);
      CHECK(v.omega == doctest::Approx(p.omega0(x)).epsilon(1e-12));
      CHECK(v.hilbert_omega == doctest::Approx(p.hilbert_omega0(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Example I values") {
  const InitialDatum d = find_preset("I").datum();
  CHECK(evaluate(d, 1.0, 0.5).omega == doctest::Approx(-1.6).epsilon(1e-14));
  CHECK(evaluate(d, 0.0, 0.9).hilbert_omega == doctest::Approx(20.0).epsilon(1e-12));
  CHECK_THROWS_AS(evaluate(d, 0.0, 1.0), AtSingularity);
}

TEST_CASE("property: Example I is exactly self-similar") {
  const Preset& p = find_preset("I");
  const InitialDatum d = p.datum();
  for (int k = 1; k <= 9; ++k) {
    const double t = 0.1 * k;
    for (double x = -10.0; x <= 10.0; x += 0.25) {
      const double want = p.omega0(x / (1.0 - t)) / (1.0 - t);
      const double got = evaluate(d, x, t).omega;
      CHECK(std::abs(got - want) <= 1e-12 * std::max(std::abs(want), 1e-300) + 1e-300);
    }
  }
}

TEST_CASE("property: scaling alpha w0(beta x)") {
  const Preset& p = find_preset("III");
  const InitialDatum d = p.datum();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.2, 3.0), ux(-5.0, 5.0);
  for (int k = 0; k < 40; ++k) {
    const double alpha = u(rng), beta = u(rng);
    const InitialDatum s{BoundaryTrace([&](double x) { return alpha * p.omega0(beta * x); },
                                       [&](double x) { return alpha * p.hilbert_omega0(beta * x); }),
                           -1, false, false, "scaled"};
    const double x = ux(rng);
    const double t = 0.9 * u(rng) / (3.0 * alpha);
    const FieldValue a = evaluate(s, x, t);
    const FieldValue b = evaluate(d, beta * x, alpha * t);
    CHECK(a.omega == doctest::Approx(alpha * b.omega).epsilon(1e-12));
    CHECK(a.hilbert_omega == doctest::Approx(alpha * b.hilbert_omega).epsilon(1e-12));
  }
}

TEST_CASE("centred evaluation agrees with the plain formula") {
  const InitialDatum d = find_preset("III").datum();
  for (const double tau : {0.5, 0.1, 0.01}) {
    for (double x = -3.0; x <= 3.0; x += 0.3) {
      const FieldValue a = evaluate(d, x, 1.0 - tau);
      const FieldValue b = evaluate_before_blowup(d, x, tau);
      CHECK(b.omega == doctest::Approx(a.omega).epsilon(1e-9));
      CHECK(b.hilbert_omega == doctest::Approx(a.hilbert_omega).epsilon(1e-9));
    }
  }
}

TEST_CASE("blowup prediction") {
  auto I = predict_blowup(find_preset("I").datum());
  CHECK(I.T == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(I.points.size() == 1);
  CHECK(std::abs(I.points[0]) < 1e-12);

  auto IV = predict_blowup(find_preset("IV").datum());
  CHECK(std::abs(IV.T - 1.0) < 1e-10);
  REQUIRE(IV.points.size() == 2);
  CHECK(std::abs(IV.points[0] + std::sqrt(3.0)) < 1e-10);
  CHECK(std::abs(IV.points[1] - std::sqrt(3.0)) < 1e-10);
  CHECK(IV.zeros.size() == 3);

  auto V = predict_blowup(find_preset("V").datum());
  CHECK(std::abs(V.T - 16.0 / 3.0) < 1e-10);
  CHECK(V.sup_h == doctest::Approx(0.375));

  CHECK_THROWS_AS(predict_blowup(find_preset("VI").datum()), EmptyS);
}

TEST_CASE("conserved quantity") {
  const InitialDatum I = find_preset("I").datum();
  for (const double t : {0.0, 0.5, 0.9, 0.99}) CHECK(std::abs(conserved_quantity(I, t, 1.0) - 2.0) <= 1e-10);
  CHECK(std::abs(conserved_quantity(find_preset("III").datum(), 0.999, 1.0) - 2.0) <= 1e-9);
  CHECK(std::abs(conserved_quantity(find_preset("V").datum(), 5.0, 16.0 / 3.0) - 2.0) <= 1e-9);
}

TEST_CASE("property: conservation for every origin-blowup preset up to 0.999 T") {
  for (const Preset& p : presets()) {
    if (!p.T || p.points != std::vector<double>{0.0}) continue;
    CAPTURE(p.id);
    const InitialDatum d = p.datum();
    for (int k = 0; k <= 999; k += 37) {
      const double t = *p.T * k / 1000.0;
      CHECK(std::abs(conserved_quantity(d, t, *p.T) - 2.0) <= 1e-9);
    }
    CHECK(std::abs(conserved_quantity(d, 0.999 * *p.T, *p.T) - 2.0) <= 1e-9);
  }
}

TEST_CASE("H(w0)(0) by quadrature") {
  CHECK(hilbert_at_zero_integral(find_preset("I").datum()) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(hilbert_at_zero_integral(find_preset("III").datum()) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(hilbert_at_zero_integral(find_preset("V").datum()) == doctest::Approx(0.375).epsilon(1e-9));
}

TEST_CASE("property: parity preserved by the solution") {
  for (const Preset& p : presets()) {
    if (!p.odd_symmetric) continue;
    const InitialDatum d = p.datum();
    const double t = 0.5 * *p.T;
    for (double x = 0.1; x <= 8.0; x += 0.7) {
      const FieldValue a = evaluate(d, x, t), b = evaluate(d, -x, t);
      CHECK(a.omega == doctest::Approx(-b.omega).epsilon(1e-13));
      CHECK(a.hilbert_omega == doctest::Approx(b.hilbert_omega).epsilon(1e-13));
    }
  }
}

TEST_CASE("datum validation") {
  for (const Preset& p : presets()) CHECK_NOTHROW(p.datum().validate());
  InitialDatum bad = find_preset("VI").datum();
  bad.odd_symmetric = true;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("snapshots") {
  const InitialDatum d = find_preset("III").datum();
  const std::vector<double> xs{-1.0, 0.0, 1.0};
  const SolutionSnapshot s = snapshot(d, xs, 0.0);
  CHECK(s.omega[2] == doctest::Approx(-0.8));
  CHECK(s.hilbert_omega[1] == doctest::Approx(2.0));
  const SolutionSnapshot b = snapshot_before_blowup(d, xs, 0.5);
  CHECK(b.t == doctest::Approx(0.5));
}
