#include "clm/presets.hpp"

#include <cmath>
#include <sstream>

#include "clm/error.hpp"

namespace clm {

namespace {

constexpr cplx I{0.0, 1.0};

RationalFunction rf(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
  return RationalFunction(Polynomial(num), Polynomial(den));
}

std::vector<Preset> build() {
  std::vector<Preset> out;

  {
    Preset p;
    p.id = "I";
    p.title = "exact one-scale self-similar blowup";
    p.eta0 = rf({-2.0}, {I, 1.0});
    p.omega0 = [](double x) { return -2.0 * x / (1.0 + x * x); };
    p.hilbert_omega0 = [](double x) { return 2.0 / (1.0 + x * x); };
    p.T = 1.0;
    p.points = {0.0};
    p.exponents = ExpectedExponents{-1.0, 1.0, std::nullopt};
    p.n = 0;
    p.odd_symmetric = p.sign_condition = true;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "II";
    p.title = "one-scale asymptotically self-similar blowup";
    p.eta0 = rf({10.0 * I, 10.0}, {5.0, -8.0 * I, -4.0});
    p.omega0 = [](double x) {
      const double x2 = x * x;
      return -(30.0 * x + 40.0 * x * x2) / (25.0 + 24.0 * x2 + 16.0 * x2 * x2);
    };
    p.hilbert_omega0 = [](double x) {
      const double x2 = x * x;
      return (50.0 + 40.0 * x2) / (25.0 + 24.0 * x2 + 16.0 * x2 * x2);
    };
    p.T = 1.0;
    p.points = {0.0};
    p.exponents = ExpectedExponents{-1.0, 1.0, std::nullopt};
    p.n = 0;
    p.odd_symmetric = p.sign_condition = true;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "III";
    p.title = "two-scale blowup, n = 1";
    p.eta0 = rf({4.0 * I, 4.0}, {2.0, -2.0 * I, -1.0});
    p.omega0 = [](double x) { return -4.0 * x * x * x / (4.0 + x * x * x * x); };
    p.hilbert_omega0 = [](double x) { return (8.0 + 4.0 * x * x) / (4.0 + x * x * x * x); };
    p.T = 1.0;
    p.points = {0.0};
    p.exponents = ExpectedExponents{-1.5, 1.0, 0.5};
    p.n = 1;
    p.odd_symmetric = p.sign_condition = true;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "III-fig";
    p.title = "two-scale blowup, n = 1, half amplitude";
    p.eta0 = rf({2.0 * I, 2.0}, {2.0, -2.0 * I, -1.0});
    p.omega0 = [](double x) { return -2.0 * x * x * x / (4.0 + x * x * x * x); };
    p.hilbert_omega0 = [](double x) { return (4.0 + 2.0 * x * x) / (4.0 + x * x * x * x); };
    p.T = 2.0;
    p.points = {0.0};
    p.exponents = ExpectedExponents{-1.5, 1.0, 0.5};
    p.n = 1;
    p.odd_symmetric = p.sign_condition = true;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "IV";
    p.title = "one-scale blowup at two points away from the origin";
    p.eta0 = rf({4.0 * I, 4.0}, {5.0, -2.0 * I, -1.0});
    p.omega0 = [](double x) {
      const double x2 = x * x;
      return (12.0 * x - 4.0 * x * x2) / (25.0 + x2 * x2 - 6.0 * x2);
    };
    p.hilbert_omega0 = [](double x) {
      const double x2 = x * x;
      return (20.0 + 4.0 * x2) / (25.0 + x2 * x2 - 6.0 * x2);
    };
    p.T = 1.0;
    p.points = {-std::sqrt(3.0), std::sqrt(3.0)};
    p.exponents = ExpectedExponents{-1.0, 1.0, std::nullopt};
    p.odd_symmetric = true;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "V";
    p.title = "two-scale blowup, n = 2";
    p.eta0 = rf({3.0, -9.0 * I, -8.0}, {-8.0 * I, -24.0, 24.0 * I, 8.0});
    p.omega0 = [](double x) {
      const double s = 1.0 + x * x;
      return -std::pow(x, 5) / (s * s * s);
    };
    p.hilbert_omega0 = [](double x) {
      const double x2 = x * x, s = 1.0 + x2;
      return (3.0 + 10.0 * x2 + 15.0 * x2 * x2) / (8.0 * s * s * s);
    };
    p.T = 16.0 / 3.0;
    p.points = {0.0};
    p.exponents = ExpectedExponents{-2.5, 2.0, 0.5};
    p.n = 2;
    p.odd_symmetric = p.sign_condition = true;
    out.push_back(std::move(p));
  }
  {
    Preset p;
    p.id = "VI";
    p.title = "traveling wave";
    p.eta0 = rf({2.0 * I}, {I, 1.0});
    p.omega0 = [](double x) { return 2.0 / (1.0 + x * x); };
    p.hilbert_omega0 = [](double x) { return 2.0 * x / (1.0 + x * x); };
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

InitialDatum Preset::datum() const { return make_datum(eta0, id, odd_symmetric, sign_condition); }

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(std::string_view id) {
  for (const Preset& p : presets())
    if (p.id == id) return p;
  throw InvalidArgument("unknown preset '" + std::string(id) + "'");
}

std::string describe(const Preset& p) {
  std::ostringstream os;
  os << p.id << ": " << p.title;
  if (p.T) {
    os << "; T = " << *p.T << " at x =";
    for (const double x : p.points) os << ' ' << x;
  } else {
    os << "; no blowup";
  }
  if (p.exponents) {
    os << "; c_omega = " << p.exponents->c_omega << ", c_l = " << p.exponents->c_l;
    if (p.exponents->c_s) os << ", c_s = " << *p.exponents->c_s;
  }
  return os.str();
}

}  // namespace clm
