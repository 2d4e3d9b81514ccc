#pragma once

#include <span>
#include <string>
#include <vector>

#include "clm/exact.hpp"
#include "clm/hilbert.hpp"

namespace clm {

struct EvolverConfig {
  // Map parameter of the mapped grid, half width of the periodic one.
  double L = 40.0;
  int n = 4096;
  double dt = 1e-3;
  double t_end = 0.5;
  // Stop when max|omega| exceeds this.
  double guard = 1e6;
  // Snapshot cadence; 0 keeps only the initial and final states.
  double snapshot_interval = 0.0;
  HilbertMethod method = HilbertMethod::mapped_fft;
  // 2/3-rule filter on the transform coefficients after every step.
  bool dealias = false;
  // dt is halved while max|omega| * dt exceeds this.
  double halving_threshold = 0.1;

  // Throws InvalidArgument.
  void validate() const;
};

enum class StopReason { reached_t_end, guard_tripped };
const char* to_string(StopReason r);

struct StepHalving {
  double t;
  double dt_before;
  double dt_after;
};

struct EvolverRun {
  std::vector<SolutionSnapshot> snapshots;
  StopReason stopped_reason = StopReason::reached_t_end;
  std::vector<StepHalving> halvings;
  long steps = 0;
};

Grid evolver_grid(const EvolverConfig& cfg);

// Classical RK4 for omega_t = omega H(omega) on the grid of cfg, starting
// from omega0 sampled on evolver_grid(cfg). Throws DomainTooSmall when the
// data do not decay (|omega0| at the ends above 1e-8 max|omega0| on the
// periodic grid, above 1e-3 max|omega0| on the mapped one).
EvolverRun evolve(std::span<const double> omega0, const EvolverConfig& cfg, std::string label = {});
EvolverRun evolve(const InitialDatum& datum, const EvolverConfig& cfg);

// max_{|x| <= window} |omega_num - omega_exact| / max_{|x| <= window} |omega_exact|.
double sup_relative_deviation(const SolutionSnapshot& s, const InitialDatum& datum,
                              double window = 10.0);

enum class Refine { dt, n };

struct ConvergenceRow {
  double dt;
  int n;
  double error;
  // error of the previous row / this error; 0 for the first row.
  double ratio;
};

// Errors at cfg.t_end against the exact solution while halving dt (or
// doubling n) `refinements` times after the base run.
std::vector<ConvergenceRow> convergence_study(const InitialDatum& datum, EvolverConfig cfg,
                                              int refinements, Refine what = Refine::dt,
                                              double window = 10.0);

}  // namespace clm
