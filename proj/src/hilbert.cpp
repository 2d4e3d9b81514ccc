#include "clm/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "clm/error.hpp"
#include "fft.hpp"

namespace clm {

namespace {

using cplx = std::complex<double>;
using detail::FftPair;
using detail::FftwBuffer;

// Multiplies mode k of an unnormalised DFT by -i sgn(k); the Nyquist mode
// is dropped. Returns the l1 norm of the top eighth of the spectrum / n.
double apply_multiplier(cplx* spec, int n) {
  const int half = n / 2;
  const cplx minus_i{0.0, -1.0};
  double tail = 0.0;
  for (int k = 0; k < n; ++k) {
    const int signed_k = k < half ? k : k - n;
    if (std::abs(signed_k) >= 7 * n / 16) tail += std::abs(spec[k]);
    if (k == half) {
      spec[k] = 0.0;
    } else if (signed_k >= 0) {
      spec[k] *= minus_i;
    } else {
      spec[k] *= -minus_i;
    }
  }
  return tail / n;
}

double quadrature_transform(const std::vector<double>& x, std::span<const double> f,
                            std::span<double> out) {
  const std::size_t n = x.size();
  const bool tails = x.front() < 0.0 && x.back() > 0.0;
  const double right_c = f[n - 1] * x.back();
  const double left_c = f[0] * x.front();
  double tail_size = 0.0;
  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    for (std::size_t j = 0; j < n; ++j) logs[j] = (j == i) ? 0.0 : std::log(std::abs(xi - x[j]));
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double h = x[j + 1] - x[j];
      const double s = (f[j + 1] - f[j]) / h;
      const double alpha = f[j] + s * (xi - x[j]);
      acc += alpha * (logs[j] - logs[j + 1]) - s * h;
    }
    if (tails) {
      const double right_y = x.back();
      const double left_y = -x.front();
      double t = 0.0;
      if (xi == 0.0) {
        t = -right_c / right_y - left_c / left_y;
      } else {
        t += (i == n - 1) ? -(right_c / xi) * std::log(right_y)
                          : (right_c / xi) * std::log1p(-xi / right_y);
        t += (i == 0) ? (left_c / xi) * std::log(left_y)
                      : -(left_c / xi) * std::log1p(xi / left_y);
      }
      acc += t;
      tail_size = std::max(tail_size, std::abs(t) / std::numbers::pi);
    }
    out[i] = acc / std::numbers::pi;
  }
  return tail_size;
}

}  // namespace

const char* to_string(HilbertMethod m) {
  switch (m) {
    case HilbertMethod::mapped_fft: return "mapped-fft";
    case HilbertMethod::periodic_fft: return "periodic-fft";
    case HilbertMethod::quadrature: return "quadrature";
  }
  return "?";
}

HilbertMethod hilbert_method_from_string(const std::string& s) {
  if (s == "mapped-fft" || s == "fft") return HilbertMethod::mapped_fft;
  if (s == "periodic-fft") return HilbertMethod::periodic_fft;
  if (s == "quadrature") return HilbertMethod::quadrature;
  throw InvalidArgument("unknown Hilbert method '" + s + "'");
}

Grid Grid::mapped(int n, double L) {
  if (n < 2 || n % 2 != 0 || L <= 0.0) throw InvalidArgument("mapped grid needs even n >= 2 and L > 0");
  Grid g{Kind::mapped, L, std::vector<double>(static_cast<std::size_t>(n))};
  for (int j = 0; j < n; ++j) {
    const double theta = -std::numbers::pi + (j + 0.5) * 2.0 * std::numbers::pi / n;
    g.x[static_cast<std::size_t>(j)] = L * std::tan(theta / 2.0);
  }
  // Exact antisymmetry of the node set.
  for (int j = 0; j < n / 2; ++j) g.x[static_cast<std::size_t>(n - 1 - j)] = -g.x[static_cast<std::size_t>(j)];
  return g;
}

Grid Grid::uniform(int n, double L) {
  if (n < 2 || L <= 0.0) throw InvalidArgument("uniform grid needs n >= 2 and L > 0");
  Grid g{Kind::uniform, L, std::vector<double>(static_cast<std::size_t>(n))};
  for (int j = 0; j < n; ++j) g.x[static_cast<std::size_t>(j)] = -L + j * 2.0 * L / n;
  return g;
}

Grid Grid::graded(int n, double L, double stretch) {
  if (n < 3 || L <= 0.0 || stretch <= 0.0) throw InvalidArgument("graded grid needs n >= 3, L > 0, stretch > 0");
  Grid g{Kind::graded, L, std::vector<double>(static_cast<std::size_t>(n))};
  for (int j = 0; j < n; ++j) {
    const double u = -1.0 + 2.0 * j / (n - 1);
    g.x[static_cast<std::size_t>(j)] = L * std::sinh(stretch * u) / std::sinh(stretch);
  }
  for (int j = 0; j < n / 2; ++j) g.x[static_cast<std::size_t>(n - 1 - j)] = -g.x[static_cast<std::size_t>(j)];
  if (n % 2 == 1) g.x[static_cast<std::size_t>(n / 2)] = 0.0;
  return g;
}

struct HilbertTransform::Impl {
  Grid grid;
  HilbertMethod method;
  std::unique_ptr<FftPair> fft;

  double run(std::span<const double> f, std::span<double> out) const {
    const int n = static_cast<int>(grid.size());
    switch (method) {
      case HilbertMethod::mapped_fft: {
        FftwBuffer a(grid.size()), b(grid.size());
        for (int j = 0; j < n; ++j)
          a.c()[j] = cplx{grid.L, -grid.x[static_cast<std::size_t>(j)]} * f[static_cast<std::size_t>(j)];
        fft->forward(a, b);
        const double tail = apply_multiplier(b.c(), n);
        fft->backward(b, a);
        for (int j = 0; j < n; ++j) {
          const cplx v = a.c()[j] / static_cast<double>(n) /
                         cplx{grid.L, -grid.x[static_cast<std::size_t>(j)]};
          out[static_cast<std::size_t>(j)] = v.real();
        }
        return tail / grid.L;
      }
      case HilbertMethod::periodic_fft: {
        FftwBuffer a(grid.size()), b(grid.size());
        for (int j = 0; j < n; ++j) a.c()[j] = f[static_cast<std::size_t>(j)];
        fft->forward(a, b);
        const double tail = apply_multiplier(b.c(), n);
        fft->backward(b, a);
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = a.c()[j].real() / n;
        const double ends = std::max(std::abs(f.front()), std::abs(f.back()));
        return tail + 2.0 / std::numbers::pi * ends;
      }
      case HilbertMethod::quadrature:
        return quadrature_transform(grid.x, f, out);
    }
    return 0.0;
  }
};

HilbertTransform::HilbertTransform(Grid grid, HilbertMethod method)
    : impl_(std::make_unique<Impl>()) {
  const bool ok = (method == HilbertMethod::mapped_fft && grid.kind == Grid::Kind::mapped) ||
                  (method == HilbertMethod::periodic_fft && grid.kind == Grid::Kind::uniform) ||
                  (method == HilbertMethod::quadrature && grid.kind != Grid::Kind::mapped);
  if (!ok) throw InvalidArgument(std::string("grid kind does not suit method ") + to_string(method));
  if (method != HilbertMethod::quadrature && grid.size() % 2 != 0)
    throw InvalidArgument("FFT Hilbert transform needs an even number of points");
  if (!std::is_sorted(grid.x.begin(), grid.x.end())) throw InvalidArgument("grid must be increasing");
  impl_->method = method;
  if (method != HilbertMethod::quadrature) impl_->fft = std::make_unique<FftPair>(static_cast<int>(grid.size()));
  impl_->grid = std::move(grid);
}

HilbertTransform::~HilbertTransform() = default;
HilbertTransform::HilbertTransform(HilbertTransform&&) noexcept = default;
HilbertTransform& HilbertTransform::operator=(HilbertTransform&&) noexcept = default;

const Grid& HilbertTransform::grid() const { return impl_->grid; }
HilbertMethod HilbertTransform::method() const { return impl_->method; }

void HilbertTransform::apply(std::span<const double> f, std::span<double> out) const {
  if (f.size() != impl_->grid.size() || out.size() != f.size())
    throw InvalidArgument("sample count does not match the grid");
  impl_->run(f, out);
}

HilbertResult HilbertTransform::operator()(std::span<const double> f, double decay_tolerance) const {
  if (f.size() != impl_->grid.size()) throw InvalidArgument("sample count does not match the grid");
  double peak = 0.0;
  for (const double v : f) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite sample");
    peak = std::max(peak, std::abs(v));
  }
  const double ends = std::max(std::abs(f.front()), std::abs(f.back()));
  if (peak > 0.0 && ends > decay_tolerance * peak)
    throw DomainTooSmall("samples do not decay toward the grid ends (|f_end| / max|f| = " +
                         std::to_string(ends / peak) + ")");
  HilbertResult r;
  r.values.resize(f.size());
  r.error_estimate = impl_->run(f, r.values);
  return r;
}

HilbertResult hilbert_numeric(const Grid& grid, std::span<const double> f, HilbertMethod method,
                              double decay_tolerance) {
  return HilbertTransform(grid, method)(f, decay_tolerance);
}

}  // namespace clm
