#include "clm/rational.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "clm/error.hpp"

namespace clm {

namespace {

Polynomial deflate(const Polynomial& p, cplx r) {
  const int n = p.degree();
  std::vector<cplx> q(static_cast<std::size_t>(n));
  cplx b = p.coeff(n);
  for (int k = n - 1; k >= 0; --k) {
    q[static_cast<std::size_t>(k)] = b;
    b = p.coeff(k) + r * b;
  }
  return Polynomial(std::move(q));
}

std::vector<double> real_parts(const Polynomial& p) {
  std::vector<double> out(p.coeffs().size());
  std::transform(p.coeffs().begin(), p.coeffs().end(), out.begin(),
                 [](cplx c) { return c.real(); });
  return out;
}

std::vector<double> imag_parts(const Polynomial& p) {
  std::vector<double> out(p.coeffs().size());
  std::transform(p.coeffs().begin(), p.coeffs().end(), out.begin(),
                 [](cplx c) { return c.imag(); });
  return out;
}

void trim_real(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den, bool)
    : num_(std::move(num)), den_(std::move(den)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den, const RootOptions& opts)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw InvalidArgument("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1.0);
    return;
  }
  if (num_.degree() < 1 || den_.degree() < 1) return;

  std::vector<Root> nr = roots(num_, opts);
  std::vector<Root> dr = roots(den_, opts);
  std::sort(nr.begin(), nr.end(),
            [](const Root& a, const Root& b) { return std::abs(a.value) < std::abs(b.value); });
  for (Root& a : nr) {
    for (Root& b : dr) {
      if (b.multiplicity == 0) continue;
      const double radius = opts.cluster_radius * std::max(1.0, std::abs(a.value));
      if (std::abs(a.value - b.value) > radius) continue;
      const int common = std::min(a.multiplicity, b.multiplicity);
      for (int k = 0; k < common; ++k) {
        num_ = deflate(num_, a.value);
        den_ = deflate(den_, b.value);
      }
      a.multiplicity -= common;
      b.multiplicity -= common;
      if (a.multiplicity == 0) break;
    }
  }
}

RationalFunction RationalFunction::constant(cplx c) {
  return RationalFunction(Polynomial::constant(c), Polynomial::constant(1.0), true);
}

cplx RationalFunction::operator()(cplx z) const {
  const cplx d = den_(z);
  if (std::abs(d) < 1e-14 * den_.abs_scale(std::abs(z)))
    throw PoleHit("evaluation at a pole near z = (" + std::to_string(z.real()) + ", " +
                  std::to_string(z.imag()) + ")");
  return num_(z) / d;
}

cplx eval(const RationalFunction& f, cplx z) { return f(z); }

cplx RationalFunction::eval_derivative(cplx z) const {
  const cplx d = den_(z);
  if (std::abs(d) < 1e-14 * den_.abs_scale(std::abs(z)))
    throw PoleHit("derivative evaluated at a pole");
  return (num_.derivative()(z) * d - num_(z) * den_.derivative()(z)) / (d * d);
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::reciprocal() const {
  if (num_.is_zero()) throw InvalidArgument("reciprocal of the zero function");
  return RationalFunction(den_, num_, true);
}

std::vector<Root> RationalFunction::poles() const {
  if (den_.degree() < 1) return {};
  return roots(den_);
}

std::vector<Root> RationalFunction::zeros() const {
  if (num_.degree() < 1) return {};
  return roots(num_);
}

bool RationalFunction::is_upper_holomorphic() const {
  if (num_.degree() >= den_.degree()) return false;
  const auto ps = poles();
  return std::all_of(ps.begin(), ps.end(), [](const Root& r) { return r.value.imag() < 0.0; });
}

RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) {
  return RationalFunction(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
}

RationalFunction operator-(const RationalFunction& f, const RationalFunction& g) {
  return RationalFunction(f.num_ * g.den_ - g.num_ * f.den_, f.den_ * g.den_);
}

RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
  return RationalFunction(f.num_ * g.num_, f.den_ * g.den_);
}

RationalFunction operator*(cplx s, const RationalFunction& f) {
  if (s == cplx{}) return RationalFunction::constant(0.0);
  return RationalFunction(s * f.num_, f.den_, true);
}

// ---------------------------------------------------------------------------

double RealRational::operator()(double x) const { return horner(num, x) / horner(den, x); }

std::vector<double> RealRational::taylor(int order) const {
  std::vector<double> s(static_cast<std::size_t>(order + 1), 0.0);
  const double d0 = den.empty() ? 0.0 : den[0];
  if (d0 == 0.0) throw InvalidArgument("Taylor expansion at a pole");
  for (int k = 0; k <= order; ++k) {
    double acc = k < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(k)] : 0.0;
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j)
      acc -= den[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k - j)];
    s[static_cast<std::size_t>(k)] = acc / d0;
  }
  return s;
}

double RealRational::divided_by_power(double x, int m) const {
  double acc = 0.0;
  for (int k = static_cast<int>(num.size()) - 1; k >= m; --k)
    acc = acc * x + num[static_cast<std::size_t>(k)];
  return acc / horner(den, x);
}

BoundaryTrace::BoundaryTrace(Fn omega0, Fn hilbert_omega0)
    : omega0_(std::move(omega0)), hilbert_(std::move(hilbert_omega0)) {}

BoundaryTrace BoundaryTrace::from_rational(const RationalFunction& eta0) {
  // For real x, eta0(x) = N(x) conj(D(x)) / |D(x)|^2 with conj(D(x)) = Dbar(x).
  const Polynomial dbar = eta0.den().conj_coeffs();
  const Polynomial p = (eta0.num() * dbar).cleaned(1e-14);
  const Polynomial q = (eta0.den() * dbar).cleaned(1e-14);

  Exact ex;
  ex.omega = {real_parts(p), real_parts(q)};
  ex.hilbert = {imag_parts(p), real_parts(q)};
  trim_real(ex.omega.num);
  trim_real(ex.hilbert.num);
  trim_real(ex.omega.den);
  ex.hilbert.den = ex.omega.den;

  ex.excess.den = ex.omega.den;
  ex.excess.num = ex.hilbert.num;
  ex.excess.num.resize(std::max(ex.excess.num.size(), ex.excess.den.size()), 0.0);
  const double h0 = ex.hilbert.num.empty() ? 0.0 : ex.hilbert.num[0] / ex.omega.den[0];
  for (std::size_t k = 0; k < ex.excess.den.size(); ++k) ex.excess.num[k] -= h0 * ex.excess.den[k];
  ex.excess.num[0] = 0.0;
  trim_real(ex.excess.num);

  auto shared = std::make_shared<Exact>(ex);
  BoundaryTrace trace([shared](double x) { return shared->omega(x); },
                      [shared](double x) { return shared->hilbert(x); });
  trace.exact_ = std::move(ex);
  trace.eta0_ = eta0;
  return trace;
}

const RealRational& BoundaryTrace::omega_exact() const {
  if (!exact_) throw InvalidArgument("trace has no exact rational form");
  return exact_->omega;
}

const RealRational& BoundaryTrace::hilbert_exact() const {
  if (!exact_) throw InvalidArgument("trace has no exact rational form");
  return exact_->hilbert;
}

const RealRational& BoundaryTrace::hilbert_excess_exact() const {
  if (!exact_) throw InvalidArgument("trace has no exact rational form");
  return exact_->excess;
}

double BoundaryTrace::hilbert_excess(double x) const {
  if (exact_) return exact_->excess(x);
  return hilbert_(x) - hilbert_(0.0);
}

BoundaryTrace boundary_trace(const RationalFunction& f) {
  if (!f.is_upper_holomorphic())
    throw NotUpperHolomorphic(
        "initial datum must decay and have all poles strictly in the lower half-plane");
  return BoundaryTrace::from_rational(f);
}

}  // namespace clm
