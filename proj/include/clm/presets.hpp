#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clm/exact.hpp"
#include "clm/rational.hpp"

namespace clm {

struct ExpectedExponents {
  double c_omega = 0.0;
  double c_l = 0.0;
  // Absent for one-scale blowups.
  std::optional<double> c_s;
};

struct Preset {
  std::string id;
  std::string title;
  RationalFunction eta0 = RationalFunction::constant(0.0);
  // Closed forms of the boundary trace, independent of eta0.
  std::function<double(double)> omega0;
  std::function<double(double)> hilbert_omega0;
  // Blowup time and points; no value for data that never blow up.
  std::optional<double> T;
  std::vector<double> points;
  std::optional<ExpectedExponents> exponents;
  // Order of degeneracy at the origin (omega0 ~ -x^(2n+1)); -1 if the
  // theorem machinery does not apply.
  int n = -1;
  bool odd_symmetric = false;
  bool sign_condition = false;

  RationalFunction zeta0() const { return eta0.reciprocal(); }
  InitialDatum datum() const;
};

const std::vector<Preset>& presets();
// Throws InvalidArgument for unknown ids.
const Preset& find_preset(std::string_view id);

std::string describe(const Preset& p);

}  // namespace clm
