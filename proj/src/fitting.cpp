#include "clm/fitting.hpp"

#include <cmath>

#include "clm/error.hpp"

namespace clm {

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("fit_power_law: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] != 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(std::abs(y[i])));
    }
  }
  const std::size_t n = lx.size();
  if (n < 2) throw InvalidArgument("fit_power_law needs at least two usable samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_power_law: all abscissae equal");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / static_cast<double>(n));
  fit.count = n;
  return fit;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > 0.0) || n < 2) throw InvalidArgument("log_spaced needs lo, hi > 0 and n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw InvalidArgument("linspace needs n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  out.back() = hi;
  return out;
}

double richardson_h2(const std::function<double(double)>& F, double h0, int levels) {
  if (levels < 1) throw InvalidArgument("richardson_h2 needs at least one level");
  std::vector<std::vector<double>> R(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) {
    auto& row = R[static_cast<std::size_t>(j)];
    row.push_back(F(h0 / std::pow(2.0, j)));
    for (int k = 1; k <= j; ++k) {
      const double prev_same = row[static_cast<std::size_t>(k - 1)];
      const double prev_up = R[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
      row.push_back(prev_same + (prev_same - prev_up) / (std::pow(4.0, k) - 1.0));
    }
  }
  return R.back().back();
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_iterations) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iterations; ++it) {
    if (b - a <= rel_tol * (std::abs(a) + std::abs(b))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace clm
