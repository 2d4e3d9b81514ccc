#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "clm/asymptotics.hpp"
#include "clm/cli.hpp"
#include "clm/error.hpp"
#include "clm/exact.hpp"
#include "clm/hilbert.hpp"
#include "clm/poles.hpp"
#include "clm/presets.hpp"
#include "clm/spectral.hpp"

namespace py = pybind11;
using namespace clm;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  return {a.data(), a.data() + a.size()};
}

py::dict snapshot_dict(const SolutionSnapshot& s) {
  py::dict d;
  d["t"] = s.t;
  d["x"] = py::array(py::cast(s.xs));
  d["omega"] = py::array(py::cast(s.omega));
  d["hilbert_omega"] = py::array(py::cast(s.hilbert_omega));
  return d;
}

py::tuple evaluate_array(const std::string& id, const Array& x, double t) {
  const InitialDatum d = find_preset(id).datum();
  Array w(x.size()), h(x.size());
  auto pw = w.mutable_data();
  auto ph = h.mutable_data();
  for (py::ssize_t i = 0; i < x.size(); ++i) {
    const FieldValue v = evaluate(d, x.data()[i], t);
    pw[i] = v.omega;
    ph[i] = v.hilbert_omega;
  }
  return py::make_tuple(w, h);
}

}  // namespace

PYBIND11_MODULE(_clmlab, m) {
  py::register_exception<Error>(m, "ClmError", PyExc_RuntimeError);

  m.attr("__version__") = CLM_VERSION;

  py::class_<TheoremParams>(m, "TheoremParams")
      .def_readonly("a", &TheoremParams::a)
      .def_readonly("b", &TheoremParams::b)
      .def_readonly("c", &TheoremParams::c)
      .def_readonly("n", &TheoremParams::n)
      .def_readonly("T", &TheoremParams::T)
      .def_readonly("rT", &TheoremParams::rT)
      .def("__repr__", [](const TheoremParams& p) {
        std::ostringstream os;
        os << "TheoremParams(a=" << p.a << ", b=" << p.b << ", c=" << p.c << ", n=" << p.n << ")";
        return os.str();
      });

  m.def("preset_ids", [] {
    std::vector<std::string> ids;
    for (const Preset& p : presets()) ids.push_back(p.id);
    return ids;
  });
  m.def("describe", [](const std::string& id) { return describe(find_preset(id)); }, py::arg("preset"));
  m.def("blowup_time", [](const std::string& id) { return find_preset(id).T; }, py::arg("preset"),
        "Reference blowup time, or None.");

  m.def("evaluate", &evaluate_array, py::arg("preset"), py::arg("x"), py::arg("t"),
        "(omega, H(omega)) of the closed-form solution at the points x.");
  m.def("initial_data", [](const std::string& id, const Array& x) {
    const Preset& p = find_preset(id);
    Array w(x.size()), h(x.size());
    for (py::ssize_t i = 0; i < x.size(); ++i) {
      w.mutable_data()[i] = p.omega0(x.data()[i]);
      h.mutable_data()[i] = p.hilbert_omega0(x.data()[i]);
    }
    return py::make_tuple(w, h);
  }, py::arg("preset"), py::arg("x"));
  m.def("conserved_quantity", [](const std::string& id, double t) {
    const Preset& p = find_preset(id);
    if (!p.T) throw InvalidArgument("preset " + p.id + " does not blow up");
    return conserved_quantity(p.datum(), t, *p.T);
  }, py::arg("preset"), py::arg("t"));

  m.def("predict_blowup", [](const std::string& id) {
    const BlowupPrediction b = predict_blowup(find_preset(id).datum());
    return py::make_tuple(b.T, b.points);
  }, py::arg("preset"));
  m.def("first_touch", [](const std::string& id, double t_max) {
    const TouchResult r = first_touch(find_preset(id).zeta0(), t_max);
    return py::make_tuple(r.T, r.points);
  }, py::arg("preset"), py::arg("t_max") = 100.0);
  m.def("zeros_at_time", [](const std::string& id, double t) {
    std::vector<std::complex<double>> z;
    for (const Root& r : zeros_at_time(find_preset(id).zeta0(), t))
      for (int k = 0; k < r.multiplicity; ++k) z.push_back(r.value);
    return z;
  }, py::arg("preset"), py::arg("t"));

  m.def("extract_params", [](const std::string& id, int n) { return extract_params(find_preset(id).datum(), n); },
        py::arg("preset"), py::arg("n"));
  m.def("profile_error", [](const std::string& id, int n, double tau, double window) {
    const InitialDatum d = find_preset(id).datum();
    const ProfileError e = profile_error(d, extract_params(d, n), tau, window);
    return py::make_tuple(e.err_omega, e.err_hilbert);
  }, py::arg("preset"), py::arg("n"), py::arg("tau"), py::arg("window") = 10.0);
  m.def("r_of_t", [](const std::string& id, int n, double t) {
    const InitialDatum d = find_preset(id).datum();
    return r_of_t(d, extract_params(d, n), t);
  }, py::arg("preset"), py::arg("n"), py::arg("t"));

  m.def("hilbert", [](const Array& f, double L) {
    const Grid g = Grid::mapped(static_cast<int>(f.size()), L);
    return py::array(py::cast(hilbert_numeric(g, to_vector(f)).values));
  }, py::arg("f"), py::arg("L"), "Hilbert transform of samples on the mapped grid of the same size.");
  m.def("mapped_grid", [](int n, double L) { return py::array(py::cast(Grid::mapped(n, L).x)); },
        py::arg("n"), py::arg("L"));

  m.def("evolve", [](const std::string& id, double t_end, int n, double L, double dt) {
    EvolverConfig cfg;
    cfg.t_end = t_end;
    cfg.n = n;
    cfg.L = L;
    cfg.dt = dt;
    const Preset& p = find_preset(id);
    const EvolverRun run = evolve(p.datum(), cfg);
    py::dict out = snapshot_dict(run.snapshots.back());
    out["stopped_reason"] = to_string(run.stopped_reason);
    out["steps"] = run.steps;
    out["deviation"] = sup_relative_deviation(run.snapshots.back(), p.datum());
    return out;
  }, py::arg("preset"), py::arg("t_end"), py::arg("n") = 4096, py::arg("L") = 40.0, py::arg("dt") = 1e-3);

  m.def("scaling", [](const std::string& id, double tau_min, double tau_max, int points) {
    const Preset& p = find_preset(id);
    if (!p.T) throw InvalidArgument("preset " + p.id + " does not blow up");
    const InitialDatum d = p.datum();
    std::vector<SolutionSnapshot> s;
    for (const double tau : log_spaced(tau_min, tau_max, points)) s.push_back(peak_resolving_snapshot(d, tau));
    const ScalingReport r = measure_scales(s, *p.T, &d);
    py::dict out;
    out["c_omega"] = r.c_omega;
    out["c_l"] = r.c_l;
    out["c_s"] = r.c_s_degenerate ? py::object(py::none()) : py::object(py::float_(r.c_s));
    out["power_relation_defect"] = r.power_relation_defect;
    return out;
  }, py::arg("preset"), py::arg("tau_min") = 1e-5, py::arg("tau_max") = 1e-2, py::arg("points") = 40);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the clmlab command line; returns (exit code, stdout, stderr).");
}
