#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace clm {

enum class HilbertMethod {
  // Rational-map spectral method on x = L tan(theta/2); needs a mapped grid.
  mapped_fft,
  // Multiplier -i sgn(k) on a periodic extension of [-L, L); uniform grid.
  periodic_fft,
  // Product integration of the principal-value kernel on any increasing
  // grid, with 1/y tails beyond the ends.
  quadrature,
};

const char* to_string(HilbertMethod m);
HilbertMethod hilbert_method_from_string(const std::string& s);

struct Grid {
  enum class Kind { mapped, uniform, graded };
  Kind kind = Kind::uniform;
  double L = 0.0;
  std::vector<double> x;

  // x_j = L tan(theta_j / 2), theta_j = -pi + (j + 1/2) 2 pi / n.
  static Grid mapped(int n, double L);
  // x_j = -L + j 2L / n, j < n (right end excluded, periodic).
  static Grid uniform(int n, double L);
  // x = L sinh(s u) / sinh(s) for u uniform on [-1, 1], n points.
  static Grid graded(int n, double L, double stretch = 3.0);

  std::size_t size() const { return x.size(); }
};

struct HilbertResult {
  std::vector<double> values;
  // Spectral tail for the FFT methods (plus the truncation term for the
  // periodic one); size of the modelled tail contribution for quadrature.
  double error_estimate = 0.0;
};

// Reusable transform bound to one grid. Thread-safe: plans are created
// once and executed on per-call buffers.
class HilbertTransform {
 public:
  HilbertTransform(Grid grid, HilbertMethod method);
  ~HilbertTransform();
  HilbertTransform(const HilbertTransform&) = delete;
  HilbertTransform& operator=(const HilbertTransform&) = delete;
  HilbertTransform(HilbertTransform&&) noexcept;
  HilbertTransform& operator=(HilbertTransform&&) noexcept;

  const Grid& grid() const;
  HilbertMethod method() const;

  // No decay check; out may alias nothing in f.
  void apply(std::span<const double> f, std::span<double> out) const;
  HilbertResult operator()(std::span<const double> f, double decay_tolerance = 0.1) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Principal-value Hilbert transform of samples f on grid, with the
// convention H(Re F) = Im F for F holomorphic in the upper half-plane.
// Throws DomainTooSmall if |f| at either grid end exceeds
// decay_tolerance * max|f|, InvalidArgument if the grid does not suit the
// method.
HilbertResult hilbert_numeric(const Grid& grid, std::span<const double> f,
                              HilbertMethod method = HilbertMethod::mapped_fft,
                              double decay_tolerance = 0.1);

}  // namespace clm
