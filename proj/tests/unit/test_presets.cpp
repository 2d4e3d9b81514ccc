#include <cmath>

#include "doctest.h"

#include "clm/error.hpp"
#include "clm/presets.hpp"

using namespace clm;

TEST_CASE("traces from eta0 match the closed forms") {
  for (const Preset& p : presets()) {
    CAPTURE(p.id);
    const BoundaryTrace tr = boundary_trace(p.eta0);
    for (double x = -20.0; x <= 20.0; x += 0.05) {
      CHECK(std::abs(tr.omega0(x) - p.omega0(x)) <= 1e-12);
      CHECK(std::abs(tr.hilbert_omega0(x) - p.hilbert_omega0(x)) <= 1e-12);
    }
  }
}

TEST_CASE("zeta0 = 1/eta0 as written for Examples I and III") {
  const RationalFunction z1 = find_preset("I").zeta0();
  const RationalFunction z3 = find_preset("III").zeta0();
  constexpr cplx I{0.0, 1.0};
  for (const cplx z : {cplx{0.3, 0.2}, cplx{-1.5, 2.0}, cplx{4.0, -0.5}}) {
    CHECK(std::abs(z1(z) + (I + z) / 2.0) < 1e-14);
    CHECK(std::abs(z3(z) - 0.25 * (1.0 / (I + z) - (I + z))) < 1e-13);
  }
}

TEST_CASE("lookup") {
  CHECK(presets().size() == 7);
  CHECK(find_preset("III-fig").T.value() == 2.0);
  CHECK_FALSE(find_preset("VI").T.has_value());
  CHECK_THROWS_AS(find_preset("VII"), InvalidArgument);
  CHECK(describe(find_preset("V")).find("c_s = 0.5") != std::string::npos);
}
