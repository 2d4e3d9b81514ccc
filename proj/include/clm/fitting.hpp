#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace clm {

// log|y| = exponent * log(x) + log_prefactor, least squares.
struct PowerLawFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  // Root-mean-square residual in natural-log units.
  double rms = 0.0;
  std::size_t count = 0;
};

// Needs at least two samples with x > 0 and y != 0; other samples are
// skipped. Throws InvalidArgument otherwise.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

// n points from lo to hi, geometrically spaced, endpoints exact.
std::vector<double> log_spaced(double lo, double hi, int n);
std::vector<double> linspace(double lo, double hi, int n);

// Limit of F(h) as h -> 0 for F(h) = F0 + F1 h^2 + F2 h^4 + ..., from
// F(h0), F(h0/2), ... with `levels` samples.
double richardson_h2(const std::function<double(double)>& F, double h0, int levels = 6);

// Golden-section search for the maximum of a unimodal f on [a, b].
double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-14, int max_iterations = 200);

}  // namespace clm
