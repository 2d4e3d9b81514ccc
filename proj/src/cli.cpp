#include "clm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "clm/asymptotics.hpp"
#include "clm/error.hpp"
#include "clm/exact.hpp"
#include "clm/fitting.hpp"
#include "clm/io.hpp"
#include "clm/poles.hpp"
#include "clm/presets.hpp"
#include "clm/spectral.hpp"

namespace clm {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string out_dir = ".";
  std::string format = "csv";
  bool quiet = false;
};

struct Source {
  std::string preset;
  std::string datum_file;
};

struct Loaded {
  std::string id;
  RationalFunction eta0;
  InitialDatum datum;
  const Preset* preset = nullptr;
};

Loaded load(const Source& src) {
  if (src.preset.empty() == src.datum_file.empty())
    throw InvalidArgument("give exactly one of --preset and --datum");
  if (!src.preset.empty()) {
    const Preset& p = find_preset(src.preset);
    return Loaded{p.id, p.eta0, p.datum(), &p};
  }
  const std::string id = fs::path(src.datum_file).stem().string();
  const RationalFunction eta0 = read_datum_file(src.datum_file);
  return Loaded{id, eta0, make_datum(eta0, id), nullptr};
}

// Blowup time of the loaded data, if any.
std::optional<double> blowup_time(const Loaded& l) {
  if (l.preset) return l.preset->T;
  try {
    return predict_blowup(l.datum).T;
  } catch (const EmptyS&) {
    return std::nullopt;
  }
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw InvalidArgument("grid must be lo:hi:n, got '" + spec + "'");
  try {
    const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
    const int n = std::stoi(parts[2]);
    if (!(hi > lo)) throw InvalidArgument("grid needs hi > lo");
    return linspace(lo, hi, n);
  } catch (const std::logic_error&) {
    throw InvalidArgument("grid must be lo:hi:n, got '" + spec + "'");
  }
}

std::pair<double, double> parse_window(const std::string& spec) {
  const auto pos = spec.find(':');
  if (pos == std::string::npos) throw InvalidArgument("window must be lo:hi, got '" + spec + "'");
  try {
    const double lo = std::stod(spec.substr(0, pos)), hi = std::stod(spec.substr(pos + 1));
    if (!(lo > 0.0) || !(hi > lo)) throw InvalidArgument("window needs 0 < lo < hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InvalidArgument("window must be lo:hi, got '" + spec + "'");
  }
}

class Writer {
 public:
  Writer(const Common& c, std::string command, std::string preset, std::vector<std::string> argv)
      : common_(c) {
    manifest_.command = std::move(command);
    manifest_.preset = std::move(preset);
    manifest_.argv = std::move(argv);
    fs::create_directories(common_.out_dir);
  }

  void param(const std::string& k, const std::string& v) { manifest_.parameters[k] = v; }
  void param(const std::string& k, double v) { manifest_.parameters[k] = format_double(v); }

  template <class F>
  fs::path write(const std::string& name, F&& body) {
    const fs::path p = fs::path(common_.out_dir) / name;
    std::ofstream os(p);
    if (!os) throw InvalidArgument("cannot write " + p.string());
    body(os);
    manifest_.outputs.push_back(p.string());
    return p;
  }

  void finish(const std::string& stem) {
    const fs::path p = fs::path(common_.out_dir) / (stem + ".manifest.json");
    std::ofstream os(p);
    os << to_json(manifest_).dump(2) << '\n';
  }

  bool json_format() const { return common_.format == "json"; }

 private:
  Common common_;
  RunManifest manifest_;
};

std::string tag(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Vertex of the parabola through the discrete maximum of |v| and its
// neighbours.
double peak_location(const std::vector<double>& xs, const std::vector<double>& v) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[k])) k = i;
  if (k == 0 || k + 1 >= v.size()) return xs[k];
  const double x0 = xs[k - 1], x1 = xs[k], x2 = xs[k + 1];
  const double y0 = std::abs(v[k - 1]), y1 = std::abs(v[k]), y2 = std::abs(v[k + 1]);
  const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  if (curv == 0.0) return x1;
  return 0.5 * (x0 + x1) - d01 / (2.0 * curv);
}

int cmd_exact(const Common& c, const Source& src, double t, const std::string& grid,
              const std::vector<std::string>& argv, std::ostream& out) {
  const Loaded l = load(src);
  const auto T = blowup_time(l);
  if (T && t >= *T) throw AtSingularity("t = " + tag(t) + " is not before the blowup time " + tag(*T));
  const std::vector<double> xs = parse_grid(grid);
  const SolutionSnapshot s = snapshot(l.datum, xs, t);

  const std::string stem = "exact_" + l.id + "_t" + tag(t);
  Writer w(c, "exact", l.id, argv);
  w.param("t", t);
  w.param("grid", grid);
  if (w.json_format()) {
    w.write(stem + ".json", [&](std::ostream& os) { os << snapshot_to_json(s).dump(2) << '\n'; });
  } else {
    w.write(stem + ".csv", [&](std::ostream& os) { write_snapshot_csv(os, s); });
  }
  w.finish(stem);

  if (!c.quiet) {
    double peak = 0.0;
    for (const double v : s.omega) peak = std::max(peak, std::abs(v));
    out << "max|omega| = " << format_double(peak) << '\n';
    if (T && l.datum.trace.omega0(0.0) == 0.0)
      out << "(T - t) H(omega)(0, t) = " << format_double(conserved_quantity(l.datum, t, *T)) << '\n';
  }
  return 0;
}

int cmd_poles(const Common& c, const Source& src, double t0, std::optional<double> t1_opt, double dt,
              const std::string& method, const std::vector<std::string>& argv, std::ostream& out) {
  const Loaded l = load(src);
  const RationalFunction zeta0 = l.eta0.reciprocal();
  const auto T = blowup_time(l);
  const double t1 = t1_opt ? *t1_opt : (T ? 1.1 * *T : 10.0);

  std::vector<PoleTrajectory> branches;
  if (method == "algebraic" || method == "both") branches = track_zeros(zeta0, t0, t1, dt);
  if (method == "ode" || method == "both") {
    double seed_t = t0;
    std::vector<Root> seeds = zeros_at_time(zeta0, t0);
    if (std::any_of(seeds.begin(), seeds.end(), [](const Root& r) { return r.multiplicity > 1; })) {
      seed_t = t0 + 1e-6;
      seeds = zeros_at_time(zeta0, seed_t);
    }
    int id = 0;
    std::vector<PoleTrajectory> ode;
    for (const Root& r : seeds)
      for (int m = 0; m < r.multiplicity; ++m) {
        PoleTrajectory p = integrate_trajectory(zeta0, r.value, seed_t, t1, dt);
        p.branch_id = id++;
        ode.push_back(std::move(p));
      }
    if (method == "ode") {
      branches = std::move(ode);
    } else {
      for (PoleTrajectory& b : branches) b.source = TrajectorySource::both;
      const int offset = static_cast<int>(branches.size());
      for (PoleTrajectory& p : ode) {
        p.branch_id += offset;
        branches.push_back(std::move(p));
      }
    }
  } else if (method != "algebraic") {
    throw InvalidArgument("--method must be algebraic, ode or both");
  }

  const std::string stem = "poles_" + l.id;
  Writer w(c, "poles", l.id, argv);
  w.param("t0", t0);
  w.param("t1", t1);
  w.param("dt", dt);
  w.param("method", method);
  for (const PoleTrajectory& b : branches) {
    const std::string name = stem + "_branch" + std::to_string(b.branch_id) + ".csv";
    w.write(name, [&](std::ostream& os) { write_trajectories_csv(os, std::span(&b, 1)); });
  }
  w.finish(stem);

  if (!c.quiet) {
    out << branches.size() << " branches\n";
    for (const PoleTrajectory& b : branches)
      for (const TrajectoryEvent& e : b.events)
        out << "branch " << b.branch_id << ": " << to_string(e.kind) << " at t = " << format_double(e.t)
            << ", Z = " << format_double(e.z.real()) << (e.z.imag() < 0 ? " - " : " + ")
            << format_double(std::abs(e.z.imag())) << "i\n";
  }
  return 0;
}

int cmd_scaling(const Common& c, const Source& src, const std::string& window, int points,
                const std::vector<std::string>& argv, std::ostream& out) {
  const Loaded l = load(src);
  const auto T = blowup_time(l);
  if (!T) throw EmptyS("data do not blow up");
  if (l.datum.trace.omega0(0.0) != 0.0 || std::abs(2.0 / *T - l.datum.trace.hilbert_omega0(0.0)) > 1e-12)
    throw InvalidArgument("scaling assumes blowup at the origin");
  const auto [lo, hi] = parse_window(window);
  std::vector<SolutionSnapshot> snaps;
  for (const double tau : log_spaced(lo, hi, points)) snaps.push_back(peak_resolving_snapshot(l.datum, tau));
  const ScalingReport r = measure_scales(snaps, *T, &l.datum);

  const std::string stem = "scaling_" + l.id;
  Writer w(c, "scaling", l.id, argv);
  w.param("window", window);
  w.param("points", std::to_string(points));
  w.write(stem + ".json", [&](std::ostream& os) { os << scaling_report_to_json(r).dump(2) << '\n'; });
  w.write(stem + "_samples.csv", [&](std::ostream& os) { write_scale_samples_csv(os, r); });
  w.finish(stem);

  if (!c.quiet) {
    out << "c_omega = " << format_double(r.c_omega) << '\n' << "c_l = " << format_double(r.c_l) << '\n';
    out << "c_s = " << format_double(r.c_s) << (r.c_s_degenerate ? " (degenerate: no separate larger scale)" : "")
        << '\n';
    out << "power_relation_defect = " << format_double(r.power_relation_defect) << '\n';
  }
  return 0;
}

int cmd_evolve(const Common& c, const Source& src, EvolverConfig cfg, const std::string& method,
               const std::vector<std::string>& argv, std::ostream& out) {
  const Loaded l = load(src);
  cfg.method = hilbert_method_from_string(method);
  cfg.validate();
  const auto T = blowup_time(l);
  if (T && cfg.t_end >= 0.9 * *T) throw InvalidArgument("--t-end must stay below 0.9 T = " + tag(0.9 * *T));
  const EvolverRun run = evolve(l.datum, cfg);

  const std::string stem = "evolve_" + l.id;
  Writer w(c, "evolve", l.id, argv);
  w.param("L", cfg.L);
  w.param("n", std::to_string(cfg.n));
  w.param("dt", cfg.dt);
  w.param("t_end", cfg.t_end);
  w.param("method", to_string(cfg.method));
  json report{{"stopped_reason", to_string(run.stopped_reason)}, {"steps", run.steps}};
  json rows = json::array();
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    const SolutionSnapshot& s = run.snapshots[i];
    const std::string name = stem + "_" + std::to_string(i) + (w.json_format() ? ".json" : ".csv");
    w.write(name, [&](std::ostream& os) {
      if (w.json_format()) {
        os << snapshot_to_json(s).dump(2) << '\n';
      } else {
        write_snapshot_csv(os, s);
      }
    });
    json row{{"t", s.t}, {"deviation", sup_relative_deviation(s, l.datum)}};
    if (s.t > 0.0 && !T) {
      const double x0 = peak_location(run.snapshots.front().xs, run.snapshots.front().omega);
      row["peak_speed"] = (peak_location(s.xs, s.omega) - x0) / s.t;
    }
    rows.push_back(row);
  }
  report["snapshots"] = rows;
  w.write(stem + "_report.json", [&](std::ostream& os) { os << report.dump(2) << '\n'; });
  w.finish(stem);

  if (!c.quiet) {
    for (const json& row : rows) {
      out << "t = " << format_double(row["t"].get<double>())
          << ": deviation = " << format_double(row["deviation"].get<double>());
      if (row.contains("peak_speed")) out << ", peak speed = " << format_double(row["peak_speed"].get<double>());
      out << '\n';
    }
  }
  if (run.stopped_reason == StopReason::guard_tripped) {
    const double t_stop = run.snapshots.empty() ? 0.0 : run.snapshots.back().t;
    throw GuardTripped("max|omega| exceeded " + tag(cfg.guard) + " at t = " + tag(t_stop));
  }
  return 0;
}

int cmd_profile_check(const Common& c, const Source& src, const std::string& theorem, std::optional<int> n_opt,
                      const std::vector<double>& taus, double window, const std::string& center,
                      const std::vector<std::string>& argv, std::ostream& out) {
  const Loaded l = load(src);
  int n = 0;
  if (theorem == "exact" || theorem == "one-scale") {
    n = 0;
  } else if (theorem == "two-scale-basic") {
    n = 1;
  } else if (theorem == "two-scale-general") {
    n = n_opt ? *n_opt : (l.preset && l.preset->n >= 1 ? l.preset->n : 1);
  } else {
    throw InvalidArgument("--theorem must be exact, one-scale, two-scale-basic or two-scale-general");
  }
  if (n_opt && *n_opt != n) throw InvalidArgument("--n conflicts with --theorem");
  CenterRule rule = CenterRule::implicit_r;
  if (center == "constant") {
    rule = CenterRule::constant_rT;
  } else if (center != "implicit") {
    throw InvalidArgument("--center must be implicit or constant");
  }
  const TheoremParams params = extract_params(l.datum, n);
  std::vector<ProfileError> rows;
  for (const double tau : taus) rows.push_back(profile_error(l.datum, params, tau, window, rule));

  const std::string stem = "profile_" + l.id + "_" + theorem;
  Writer w(c, "profile-check", l.id, argv);
  w.param("theorem", theorem);
  w.param("n", std::to_string(n));
  w.param("window", window);
  w.param("center", center);
  w.write(stem + ".csv", [&](std::ostream& os) { write_profile_errors_csv(os, rows); });
  w.finish(stem);

  if (!c.quiet) {
    out << "a = " << format_double(params.a) << ", b = " << format_double(params.b)
        << ", c = " << format_double(params.c) << ", n = " << n << ", T = " << format_double(params.T) << '\n';
    double worst = 0.0;
    std::vector<double> ts, eo, eh;
    for (const ProfileError& r : rows) {
      worst = std::max({worst, r.err_omega, r.err_hilbert});
      ts.push_back(r.tau);
      eo.push_back(r.err_omega);
      eh.push_back(r.err_hilbert);
    }
    out << "max error = " << format_double(worst) << '\n';
    if (rows.size() >= 2 && worst > 1e-12) {
      out << "slope (omega) = " << format_double(fit_power_law(ts, eo).exponent) << '\n';
      out << "slope (H) = " << format_double(fit_power_law(ts, eh).exponent) << '\n';
    }
  }
  return 0;
}

std::string preset_footer() {
  std::string s = "Presets:\n";
  for (const Preset& p : presets()) s += "  " + describe(p) + "\n";
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit solutions, pole dynamics and blowup scaling for the Constantin-Lax-Majda model",
               "clmlab"};
  app.footer(preset_footer());
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CLM_VERSION));

  Common common;
  app.add_option("--out-dir", common.out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--format", common.format, "Snapshot format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--quiet", common.quiet, "No summary on stdout");

  std::vector<std::string> argv{"clmlab"};
  argv.insert(argv.end(), args.begin(), args.end());

  const auto add_source = [](CLI::App* sub, Source& s) {
    auto* p = sub->add_option("--preset", s.preset, "Preset id (see list-presets)");
    auto* d = sub->add_option("--datum", s.datum_file, "JSON file {\"eta0\": {\"num\": [...], \"den\": [...]}}");
    p->excludes(d);
  };

  Source src;
  double t = 0.0;
  std::string grid = "-20:20:2001";
  auto* exact = app.add_subcommand("exact", "Closed-form solution on a grid");
  add_source(exact, src);
  exact->add_option("--t", t, "Time")->capture_default_str();
  exact->add_option("--grid", grid, "lo:hi:npts")->capture_default_str();

  double t0 = 0.0, dt = 0.01;
  std::optional<double> t1;
  std::string pole_method = "algebraic";
  auto* poles = app.add_subcommand("poles", "Trajectories of the zeros of zeta = 1/eta");
  add_source(poles, src);
  poles->add_option("--t0", t0)->capture_default_str();
  poles->add_option("--t1", t1, "End time (default 1.1 T, or 10 without blowup)");
  poles->add_option("--dt", dt, "Sampling interval")->capture_default_str();
  poles->add_option("--method", pole_method, "algebraic, ode or both")->capture_default_str();

  std::string window = "1e-5:1e-2";
  int points = 40;
  auto* scaling = app.add_subcommand("scaling", "Fitted blowup exponents c_omega, c_l, c_s");
  add_source(scaling, src);
  scaling->add_option("--window", window, "T - t range lo:hi")->capture_default_str();
  scaling->add_option("--points", points, "Log-spaced snapshots")->capture_default_str();

  EvolverConfig cfg;
  std::string evolve_method = "mapped-fft";
  auto* evolve_cmd = app.add_subcommand("evolve", "Pseudo-spectral evolution compared with the closed form");
  add_source(evolve_cmd, src);
  evolve_cmd->add_option("--t-end", cfg.t_end)->capture_default_str();
  evolve_cmd->add_option("--n", cfg.n, "Grid points (power of two)")->capture_default_str();
  evolve_cmd->add_option("--L", cfg.L)->capture_default_str();
  evolve_cmd->add_option("--dt", cfg.dt)->capture_default_str();
  evolve_cmd->add_option("--guard", cfg.guard)->capture_default_str();
  evolve_cmd->add_option("--snapshot-interval", cfg.snapshot_interval)->capture_default_str();
  evolve_cmd->add_option("--method", evolve_method, "mapped-fft or periodic-fft")->capture_default_str();
  evolve_cmd->add_flag("--dealias", cfg.dealias);

  std::string theorem = "two-scale-basic", center = "implicit";
  std::optional<int> n_opt;
  std::vector<double> taus{1e-2, 1e-3, 1e-4};
  double z_window = 10.0;
  auto* profile = app.add_subcommand("profile-check", "Distance to the asymptotic blowup profile");
  add_source(profile, src);
  profile->add_option("--theorem", theorem, "exact, one-scale, two-scale-basic or two-scale-general")
      ->capture_default_str();
  profile->add_option("--n", n_opt, "Degeneracy order for two-scale-general");
  profile->add_option("--tau", taus, "Values of T - t")->delimiter(',');
  profile->add_option("--window", z_window, "z range [-w, w]")->capture_default_str();
  profile->add_option("--center", center, "implicit or constant")->capture_default_str();

  auto* list = app.add_subcommand("list-presets", "Print the presets");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*exact) return cmd_exact(common, src, t, grid, argv, out);
    if (*poles) return cmd_poles(common, src, t0, t1, dt, pole_method, argv, out);
    if (*scaling) return cmd_scaling(common, src, window, points, argv, out);
    if (*evolve_cmd) return cmd_evolve(common, src, cfg, evolve_method, argv, out);
    if (*profile) return cmd_profile_check(common, src, theorem, n_opt, taus, z_window, center, argv, out);
    if (*list) {
      out << preset_footer();
      return 0;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace clm
