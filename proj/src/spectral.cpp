#include "clm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>

#include "clm/error.hpp"
#include "fft.hpp"

namespace clm {

void EvolverConfig::validate() const {
  if (!(L > 0.0)) throw InvalidArgument("L must be positive");
  if (n < 256 || (n & (n - 1)) != 0) throw InvalidArgument("N must be a power of two >= 256");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(t_end >= 0.0)) throw InvalidArgument("t_end must be non-negative");
  if (!(guard > 0.0)) throw InvalidArgument("guard must be positive");
  if (snapshot_interval < 0.0) throw InvalidArgument("snapshot interval must be non-negative");
  if (method == HilbertMethod::quadrature) throw InvalidArgument("evolver needs an FFT Hilbert method");
}

const char* to_string(StopReason r) {
  return r == StopReason::guard_tripped ? "guard_tripped" : "reached_t_end";
}

Grid evolver_grid(const EvolverConfig& cfg) {
  return cfg.method == HilbertMethod::mapped_fft ? Grid::mapped(cfg.n, cfg.L)
                                                 : Grid::uniform(cfg.n, cfg.L);
}

namespace {

using cplx = std::complex<double>;

// 2/3-rule in the basis the transform uses (g = (L - ix) omega for the
// mapped grid, omega itself for the periodic one).
void dealias_in_place(const Grid& grid, const detail::FftPair& fft, std::vector<double>& w) {
  const int n = static_cast<int>(grid.size());
  const bool mapped = grid.kind == Grid::Kind::mapped;
  detail::FftwBuffer a(grid.size()), b(grid.size());
  for (int j = 0; j < n; ++j) {
    const cplx weight = mapped ? cplx{grid.L, -grid.x[static_cast<std::size_t>(j)]} : cplx{1.0};
    a.c()[j] = weight * w[static_cast<std::size_t>(j)];
  }
  fft.forward(a, b);
  for (int k = 0; k < n; ++k) {
    const int signed_k = k < n / 2 ? k : k - n;
    if (3 * std::abs(signed_k) > n) b.c()[k] = 0.0;
  }
  fft.backward(b, a);
  for (int j = 0; j < n; ++j) {
    const cplx weight = mapped ? cplx{grid.L, -grid.x[static_cast<std::size_t>(j)]} : cplx{1.0};
    w[static_cast<std::size_t>(j)] = (a.c()[j] / static_cast<double>(n) / weight).real();
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

EvolverRun evolve(std::span<const double> omega0, const EvolverConfig& cfg, std::string label) {
  cfg.validate();
  const HilbertTransform hilbert(evolver_grid(cfg), cfg.method);
  const Grid& grid = hilbert.grid();
  if (omega0.size() != grid.size()) throw InvalidArgument("initial samples do not match the grid");

  std::vector<double> w(omega0.begin(), omega0.end());
  const double peak = max_abs(w);
  const double end_tol = cfg.method == HilbertMethod::mapped_fft ? 1e-3 : 1e-8;
  if (std::max(std::abs(w.front()), std::abs(w.back())) > end_tol * std::max(peak, 1e-300) &&
      peak > 0.0)
    throw DomainTooSmall("initial data do not decay toward the grid ends");

  std::unique_ptr<detail::FftPair> filter;
  if (cfg.dealias) filter = std::make_unique<detail::FftPair>(static_cast<int>(grid.size()));

  const std::size_t n = grid.size();
  std::vector<double> h(n), k1(n), k2(n), k3(n), k4(n), stage(n);
  auto rhs = [&](const std::vector<double>& u, std::vector<double>& out) {
    hilbert.apply(u, h);
    for (std::size_t j = 0; j < n; ++j) out[j] = u[j] * h[j];
  };
  auto take_snapshot = [&](double t) {
    SolutionSnapshot s{t, grid.x, w, std::vector<double>(n), label};
    hilbert.apply(w, s.hilbert_omega);
    return s;
  };

  EvolverRun run;
  run.snapshots.push_back(take_snapshot(0.0));

  double dt = cfg.dt;
  double t = 0.0;
  double anchor = 0.0;
  long k_since_anchor = 0;
  double next_snap = cfg.snapshot_interval > 0.0 ? cfg.snapshot_interval : cfg.t_end;
  const double eps_t = 1e-12 * std::max(1.0, cfg.t_end);

  while (t < cfg.t_end - eps_t) {
    const double wmax = max_abs(w);
    if (wmax > cfg.guard) {
      run.stopped_reason = StopReason::guard_tripped;
      break;
    }
    while (wmax * dt > cfg.halving_threshold) {
      run.halvings.push_back({t, dt, dt / 2.0});
      dt /= 2.0;
      anchor = t;
      k_since_anchor = 0;
    }
    const double target = std::min(next_snap, cfg.t_end);
    double t_next = anchor + static_cast<double>(k_since_anchor + 1) * dt;
    bool clipped = false;
    if (t_next >= target - eps_t) {
      t_next = target;
      clipped = true;
    }
    const double step = t_next - t;

    rhs(w, k1);
    for (std::size_t j = 0; j < n; ++j) stage[j] = w[j] + 0.5 * step * k1[j];
    rhs(stage, k2);
    for (std::size_t j = 0; j < n; ++j) stage[j] = w[j] + 0.5 * step * k2[j];
    rhs(stage, k3);
    for (std::size_t j = 0; j < n; ++j) stage[j] = w[j] + step * k3[j];
    rhs(stage, k4);
    for (std::size_t j = 0; j < n; ++j)
      w[j] += step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (filter) dealias_in_place(grid, *filter, w);
    ++run.steps;

    t = t_next;
    if (clipped) {
      anchor = t;
      k_since_anchor = 0;
      if (t < cfg.t_end - eps_t) {
        run.snapshots.push_back(take_snapshot(t));
        next_snap += cfg.snapshot_interval;
      }
    } else {
      ++k_since_anchor;
    }
  }
  if (run.stopped_reason == StopReason::reached_t_end) t = cfg.t_end;
  if (run.snapshots.back().t != t) run.snapshots.push_back(take_snapshot(t));
  return run;
}

EvolverRun evolve(const InitialDatum& datum, const EvolverConfig& cfg) {
  cfg.validate();
  const Grid grid = evolver_grid(cfg);
  std::vector<double> w(grid.size());
  std::transform(grid.x.begin(), grid.x.end(), w.begin(),
                 [&](double x) { return datum.trace.omega0(x); });
  return evolve(w, cfg, datum.label);
}

double sup_relative_deviation(const SolutionSnapshot& s, const InitialDatum& datum, double window) {
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t j = 0; j < s.xs.size(); ++j) {
    if (std::abs(s.xs[j]) > window) continue;
    const double exact = evaluate(datum, s.xs[j], s.t).omega;
    err = std::max(err, std::abs(s.omega[j] - exact));
    ref = std::max(ref, std::abs(exact));
  }
  return ref > 0.0 ? err / ref : err;
}

std::vector<ConvergenceRow> convergence_study(const InitialDatum& datum, EvolverConfig cfg,
                                              int refinements, Refine what, double window) {
  if (refinements < 0) throw InvalidArgument("refinements must be non-negative");
  cfg.snapshot_interval = 0.0;
  std::vector<ConvergenceRow> rows;
  for (int r = 0; r <= refinements; ++r) {
    const EvolverRun run = evolve(datum, cfg);
    const double err = cfg.t_end == 0.0 ? 0.0 : sup_relative_deviation(run.snapshots.back(), datum, window);
    const double ratio = rows.empty() || err == 0.0 ? 0.0 : rows.back().error / err;
    rows.push_back({cfg.dt, cfg.n, err, ratio});
    if (what == Refine::dt) {
      cfg.dt /= 2.0;
    } else {
      cfg.n *= 2;
    }
  }
  return rows;
}

}  // namespace clm
