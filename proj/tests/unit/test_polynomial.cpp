#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "clm/error.hpp"
#include "clm/polynomial.hpp"

using namespace clm;

namespace {

constexpr cplx I{0.0, 1.0};

bool has_root(const std::vector<Root>& rs, cplx z, int mult, double tol) {
  return std::any_of(rs.begin(), rs.end(),
                     [&](const Root& r) { return std::abs(r.value - z) <= tol && r.multiplicity == mult; });
}

}  // namespace

TEST_CASE("trailing zeros are trimmed") {
  Polynomial p{1.0, 2.0, 0.0, 0.0};
  CHECK(p.degree() == 1);
  CHECK(p.leading() == cplx{2.0});
  CHECK(Polynomial{0.0, 0.0}.is_zero());
  CHECK(Polynomial{0.0}.degree() == -1);
}

TEST_CASE("arithmetic and evaluation") {
  const Polynomial p{1.0, I};
  const Polynomial q{-1.0, 0.0, 2.0};
  const cplx z{0.3, -1.7};
  CHECK(std::abs((p * q)(z) - p(z) * q(z)) < 1e-14);
  CHECK(std::abs((p + q)(z) - (p(z) + q(z))) < 1e-14);
  CHECK(std::abs((p - q)(z) - (p(z) - q(z))) < 1e-14);
  CHECK((p - p).is_zero());
  CHECK(q.derivative().degree() == 1);
  CHECK(std::abs(q.derivative()(z) - 4.0 * z) < 1e-14);
}

TEST_CASE("taylor shift") {
  const Polynomial p{2.0, -1.0, 3.0, I};
  const cplx z0{0.5, -0.25};
  const Polynomial s = p.taylor_shift(z0);
  for (const cplx w : {cplx{0.1, 0.2}, cplx{-1.0, 0.0}, cplx{2.0, -3.0}})
    CHECK(std::abs(s(w) - p(z0 + w)) < 1e-12);
}

TEST_CASE("roots of z^2 + 1") {
  const auto rs = roots(Polynomial{1.0, 0.0, 1.0});
  REQUIRE(rs.size() == 2);
  CHECK(has_root(rs, I, 1, 1e-12));
  CHECK(has_root(rs, -I, 1, 1e-12));
}

TEST_CASE("triple root (z + i)^3") {
  const cplx r[] = {-I, -I, -I};
  const auto rs = roots(Polynomial::from_roots(r));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].multiplicity == 3);
  CHECK(std::abs(rs[0].value + I) < 1e-8);
}

TEST_CASE("16z^4 + 24z^2 + 25 by back-substitution") {
  const Polynomial p{25.0, 0.0, 24.0, 0.0, 16.0};
  const auto rs = roots(p);
  int count = 0;
  for (const Root& r : rs) {
    count += r.multiplicity;
    CHECK(std::abs(p(r.value)) <= 1e-10);
  }
  CHECK(count == 4);
}

TEST_CASE("double root next to simple roots") {
  const cplx r[] = {-0.5 * I, -0.5 * I, cplx{1.0, -2.0}, cplx{-3.0, 0.5}};
  const auto rs = roots(Polynomial::from_roots(r, cplx{2.0, 1.0}));
  REQUIRE(rs.size() == 3);
  CHECK(has_root(rs, -0.5 * I, 2, 1e-7));
  CHECK(has_root(rs, cplx{1.0, -2.0}, 1, 1e-12));
  CHECK(has_root(rs, cplx{-3.0, 0.5}, 1, 1e-12));
}

TEST_CASE("Aberth route agrees with companion route") {
  const Polynomial p{cplx{1.0, 2.0}, -3.0, cplx{0.0, 4.0}, 1.0, 0.5};
  RootOptions opts;
  opts.method = RootMethod::aberth;
  const auto a = roots(p, opts);
  const auto c = roots(p);
  REQUIRE(a.size() == c.size());
  for (const Root& r : a) CHECK(has_root(c, r.value, r.multiplicity, 1e-10));
}

TEST_CASE("degree zero has no roots to find") {
  CHECK_THROWS_AS(roots(Polynomial{3.0}), InvalidArgument);
}

TEST_CASE("property: roots round-trip through from_roots") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 8;
    std::vector<cplx> r;
    for (int k = 0; k < n; ++k) r.emplace_back(u(rng), u(rng));
    const auto rs = roots(Polynomial::from_roots(r));
    int count = 0;
    for (const Root& x : rs) count += x.multiplicity;
    CHECK(count == n);
    for (const cplx z : r) {
      double best = 1e300;
      for (const Root& x : rs) best = std::min(best, std::abs(x.value - z));
      CHECK(best <= 1e-8 * std::max(1.0, std::abs(z)));
    }
  }
}
