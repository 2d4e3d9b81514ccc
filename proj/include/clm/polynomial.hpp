#pragma once

#include <complex>
#include <span>
#include <vector>

namespace clm {

using cplx = std::complex<double>;

// Dense univariate polynomial with complex coefficients, ascending degree.
// Trailing zero coefficients are trimmed on construction, so the leading
// coefficient is nonzero unless the polynomial is zero (empty coefficient
// list, degree -1).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> ascending);
  Polynomial(std::initializer_list<cplx> ascending)
      : Polynomial(std::vector<cplx>(ascending)) {}

  static Polynomial constant(cplx c);
  // leading * prod (z - r_k)
  static Polynomial from_roots(std::span<const cplx> roots, cplx leading = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx coeff(int k) const;
  cplx leading() const { return is_zero() ? cplx{} : coeffs_.back(); }

  cplx operator()(cplx z) const;
  // sum_k |c_k| r^k; the natural scale for rounding errors of a Horner
  // evaluation at |z| = r.
  double abs_scale(double r) const;
  double norm1() const;

  Polynomial derivative() const;
  // q(w) = p(z0 + w)
  Polynomial taylor_shift(cplx z0) const;
  Polynomial conj_coeffs() const;
  // Zeroes coefficients with |c| <= rel * max|c|, then trims.
  Polynomial cleaned(double rel) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

struct Root {
  cplx value;
  int multiplicity = 1;
};

enum class RootMethod { companion, aberth };

struct RootOptions {
  // Accept a root when |p(z)| <= rel_tol * sum_k |c_k||z|^k.
  double rel_tol = 1e-12;
  // Roots closer than this (relative to max(1,|z|)) are one root.
  double cluster_radius = 1e-8;
  RootMethod method = RootMethod::companion;
  int max_iterations = 500;
};

// All roots with multiplicities. The companion-matrix eigenvalues are the
// primary route; Aberth-Ehrlich iteration takes over when the eigensolver
// fails or a polished root does not meet the residual bound.
// Throws InvalidArgument for degree < 1 and NoConvergence if both fail.
std::vector<Root> roots(const Polynomial& p, const RootOptions& opts = {});

// Raw Aberth-Ehrlich simultaneous iteration (no clustering). Exposed for
// tests and for callers that need unpolished estimates.
std::vector<cplx> aberth_ehrlich(const Polynomial& p, int max_iterations, bool* converged = nullptr);

// Real polynomial helpers (ascending coefficients).
double horner(std::span<const double> c, double x);

}  // namespace clm
