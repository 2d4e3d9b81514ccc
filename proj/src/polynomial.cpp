#include "clm/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "clm/error.hpp"

namespace clm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <typename T>
std::vector<T> shift_coefficients(std::vector<T> a, T z0) {
  const int n = static_cast<int>(a.size()) - 1;
  for (int i = 0; i < n; ++i) {
    for (int j = n - 1; j >= i; --j) a[j] += z0 * a[j + 1];
  }
  return a;
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial Polynomial::constant(cplx c) { return Polynomial(std::vector<cplx>{c}); }

Polynomial Polynomial::from_roots(std::span<const cplx> roots, cplx leading) {
  std::vector<cplx> c{leading};
  for (const cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx{});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

cplx Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::abs_scale(double r) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

double Polynomial::norm1() const {
  double acc = 0.0;
  for (const cplx c : coeffs_) acc += std::abs(c);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(cplx z0) const {
  if (degree() < 1) return *this;
  return Polynomial(shift_coefficients(coeffs_, z0));
}

Polynomial Polynomial::conj_coeffs() const {
  std::vector<cplx> c(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), c.begin(), [](cplx v) { return std::conj(v); });
  return Polynomial(std::move(c));
}

Polynomial Polynomial::cleaned(double rel) const {
  double big = 0.0;
  for (const cplx c : coeffs_) big = std::max(big, std::abs(c));
  std::vector<cplx> c = coeffs_;
  for (cplx& v : c) {
    if (std::abs(v.real()) <= rel * big) v.real(0.0);
    if (std::abs(v.imag()) <= rel * big) v.imag(0.0);
  }
  return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (cplx& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

double horner(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// ---------------------------------------------------------------------------
// Root finding

namespace {

std::vector<cplx> companion_eigenvalues(const Polynomial& p, bool& ok) {
  const int n = p.degree();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = p.leading();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  ok = solver.info() == Eigen::Success;
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    if (!std::isfinite(out[static_cast<std::size_t>(i)].real()) ||
        !std::isfinite(out[static_cast<std::size_t>(i)].imag()))
      ok = false;
  }
  return out;
}

cplx newton_polish(const Polynomial& p, const Polynomial& dp, cplx z) {
  cplx best = z;
  double best_res = std::abs(p(z));
  for (int it = 0; it < 8 && best_res > 0.0; ++it) {
    const cplx d = dp(z);
    if (d == cplx{}) break;
    const cplx step = p(z) / d;
    z -= step;
    const double res = std::abs(p(z));
    if (res < best_res) {
      best = z;
      best_res = res;
    } else {
      break;
    }
    if (std::abs(step) <= 2.0 * kEps * std::abs(z)) break;
  }
  return best;
}

// True when the Taylor coefficients of p at c look like those of an m-fold
// root: every lower coefficient is either below what a cluster of diameter
// `radius` would produce or indistinguishable from rounding noise.
bool consistent_with_multiple_root(const Polynomial& p, cplx c, int m, double radius) {
  const int n = p.degree();
  const Polynomial shifted = p.taylor_shift(c);
  std::vector<double> abs_coeffs(p.coeffs().size());
  std::transform(p.coeffs().begin(), p.coeffs().end(), abs_coeffs.begin(),
                 [](cplx v) { return std::abs(v); });
  const std::vector<double> scales = shift_coefficients(abs_coeffs, std::abs(c));
  const double kappa = 8.0 * (n + 1) * kEps;
  const double dm = std::abs(shifted.coeff(m));
  if (dm <= kappa * scales[static_cast<std::size_t>(m)]) return false;
  for (int k = 0; k < m; ++k) {
    const double cluster_bound = std::pow(radius, m - k) * dm;
    const double noise = kappa * scales[static_cast<std::size_t>(k)];
    if (std::abs(shifted.coeff(k)) > std::max(cluster_bound, noise)) return false;
  }
  return true;
}

struct Cluster {
  std::vector<cplx> members;
  cplx centroid() const {
    return std::accumulate(members.begin(), members.end(), cplx{}) /
           static_cast<double>(members.size());
  }
};

std::vector<Cluster> candidate_clusters(const std::vector<cplx>& raw, double rel_radius) {
  const std::size_t n = raw.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(raw[i]), std::abs(raw[j])});
      if (std::abs(raw[i] - raw[j]) <= rel_radius * scale) parent[find(i)] = find(j);
    }
  std::vector<Cluster> out;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].members.push_back(raw[i]);
  }
  return out;
}

bool finalize_roots(const Polynomial& p, const std::vector<cplx>& raw, const RootOptions& opts,
                    std::vector<Root>& result) {
  // Raw eigenvalues of an m-fold root scatter by roughly eps^(1/m), far more
  // than cluster_radius; group generously, then keep a group only if the
  // polynomial is locally consistent with a multiple root at its centroid.
  constexpr double kCandidateRadius = 1e-3;
  const Polynomial dp = p.derivative();
  std::vector<Root> found;
  std::vector<Cluster> pending = candidate_clusters(raw, kCandidateRadius);
  while (!pending.empty()) {
    Cluster cl = std::move(pending.back());
    pending.pop_back();
    if (cl.members.size() == 1) {
      found.push_back({newton_polish(p, dp, cl.members.front()), 1});
      continue;
    }
    const cplx c = cl.centroid();
    const int m = static_cast<int>(cl.members.size());
    const double radius = opts.cluster_radius * std::max(1.0, std::abs(c));
    if (consistent_with_multiple_root(p, c, m, radius)) {
      Polynomial dm1 = p;
      for (int k = 0; k < m - 1; ++k) dm1 = dm1.derivative();
      cplx refined = newton_polish(dm1, dm1.derivative(), c);
      if (std::abs(refined - c) > radius) refined = c;
      found.push_back({refined, m});
      continue;
    }
    std::sort(cl.members.begin(), cl.members.end(), [c](cplx a, cplx b) {
      return std::abs(a - c) < std::abs(b - c);
    });
    Cluster outlier{{cl.members.back()}};
    cl.members.pop_back();
    pending.push_back(std::move(outlier));
    pending.push_back(std::move(cl));
  }

  for (const Root& r : found) {
    const double bound = opts.rel_tol * p.abs_scale(std::abs(r.value));
    if (!(std::abs(p(r.value)) <= bound)) return false;
  }

  // Final merge at the configured clustering radius.
  std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) {
    return a.value.real() != b.value.real() ? a.value.real() < b.value.real()
                                            : a.value.imag() < b.value.imag();
  });
  std::vector<Root> merged;
  for (const Root& r : found) {
    bool absorbed = false;
    for (Root& m : merged) {
      const double radius = opts.cluster_radius * std::max(1.0, std::abs(m.value));
      if (std::abs(m.value - r.value) <= radius) {
        const double w = static_cast<double>(m.multiplicity + r.multiplicity);
        m.value = (m.value * static_cast<double>(m.multiplicity) +
                   r.value * static_cast<double>(r.multiplicity)) / w;
        m.multiplicity += r.multiplicity;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(r);
  }
  result = std::move(merged);
  return true;
}

}  // namespace

std::vector<cplx> aberth_ehrlich(const Polynomial& p, int max_iterations, bool* converged) {
  const int n = p.degree();
  if (n < 1) throw InvalidArgument("aberth_ehrlich requires degree >= 1");
  const Polynomial dp = p.derivative();
  const double lead = std::abs(p.leading());
  // Starting circle from the largest |c_k / c_n|^(1/(n-k)).
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ck = std::abs(p.coeff(k));
    if (ck > 0.0) radius = std::max(radius, std::pow(ck / lead, 1.0 / (n - k)));
  }
  if (radius == 0.0) radius = 1.0;
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] =
        std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

  bool done = false;
  for (int it = 0; it < max_iterations && !done; ++it) {
    done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const cplx pk = p(z[k]);
      if (pk == cplx{}) continue;
      cplx dk = dp(z[k]);
      if (dk == cplx{}) dk = cplx{kEps, kEps};
      const cplx ratio = pk / dk;
      cplx repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k && z[k] != z[j]) repulsion += 1.0 / (z[k] - z[j]);
      const cplx step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      if (std::abs(step) > 4.0 * kEps * std::max(1.0, std::abs(z[k]))) done = false;
    }
  }
  if (converged) *converged = done;
  return z;
}

std::vector<Root> roots(const Polynomial& p, const RootOptions& opts) {
  if (p.degree() < 1) throw InvalidArgument("roots requires a polynomial of degree >= 1");
  std::vector<Root> result;
  if (opts.method == RootMethod::companion) {
    bool ok = false;
    const std::vector<cplx> raw = companion_eigenvalues(p, ok);
    if (ok && finalize_roots(p, raw, opts, result)) return result;
  }
  bool converged = false;
  const std::vector<cplx> raw = aberth_ehrlich(p, opts.max_iterations, &converged);
  if (finalize_roots(p, raw, opts, result)) return result;
  throw NoConvergence("root finding failed for a polynomial of degree " +
                      std::to_string(p.degree()));
}

}  // namespace clm
