#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "clm/polynomial.hpp"

namespace clm {

// num/den with the common roots divided out. The denominator is never the
// zero polynomial; a zero function is stored as 0/1.
class RationalFunction {
 public:
  RationalFunction(Polynomial num, Polynomial den, const RootOptions& opts = {});
  static RationalFunction constant(cplx c);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // Throws PoleHit when |den(z)| < 1e-14 * sum_k |d_k||z|^k.
  cplx operator()(cplx z) const;
  cplx eval_derivative(cplx z) const;

  RationalFunction derivative() const;
  RationalFunction reciprocal() const;

  std::vector<Root> poles() const;
  std::vector<Root> zeros() const;
  // All poles strictly below the real axis and deg(num) < deg(den).
  bool is_upper_holomorphic() const;

  friend RationalFunction operator+(const RationalFunction& f, const RationalFunction& g);
  friend RationalFunction operator-(const RationalFunction& f, const RationalFunction& g);
  friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g);
  friend RationalFunction operator*(cplx s, const RationalFunction& f);

 private:
  RationalFunction(Polynomial num, Polynomial den, bool already_reduced);
  Polynomial num_;
  Polynomial den_;
};

cplx eval(const RationalFunction& f, cplx z);

// Real polynomial num/den on the real line; used for exact traces.
struct RealRational {
  std::vector<double> num;
  std::vector<double> den;

  double operator()(double x) const;
  // Taylor coefficients at 0 up to x^order.
  std::vector<double> taylor(int order) const;
  // (sum_{k>=m} num_k x^(k-m)) / den(x), i.e. f(x)/x^m once the first m
  // coefficients are known to vanish.
  double divided_by_power(double x, int m) const;
};

// Boundary values of an upper-holomorphic eta0 on the real axis:
// omega0 = Re eta0, hilbert_omega0 = Im eta0. Traces built from a
// RationalFunction also carry exact real rational forms; traces built from
// plain callables only answer pointwise queries.
class BoundaryTrace {
 public:
  using Fn = std::function<double(double)>;

  BoundaryTrace(Fn omega0, Fn hilbert_omega0);
  static BoundaryTrace from_rational(const RationalFunction& eta0);

  double omega0(double x) const { return omega0_(x); }
  double hilbert_omega0(double x) const { return hilbert_(x); }

  bool has_exact() const { return exact_.has_value(); }
  const RealRational& omega_exact() const;
  const RealRational& hilbert_exact() const;
  // H(omega0)(x) - H(omega0)(0) without cancellation when exact.
  const RealRational& hilbert_excess_exact() const;
  double hilbert_excess(double x) const;
  const std::optional<RationalFunction>& eta0() const { return eta0_; }

 private:
  struct Exact {
    RealRational omega;
    RealRational hilbert;
    RealRational excess;
  };
  Fn omega0_;
  Fn hilbert_;
  std::optional<Exact> exact_;
  std::optional<RationalFunction> eta0_;
};

// Throws NotUpperHolomorphic if any pole has Im >= 0 or f does not decay.
BoundaryTrace boundary_trace(const RationalFunction& f);

}  // namespace clm
