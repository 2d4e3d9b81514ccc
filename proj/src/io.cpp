#include "clm/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "clm/error.hpp"

namespace clm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot_csv(std::ostream& os, const SolutionSnapshot& s) {
  os << "# t=" << format_double(s.t) << '\n';
  os << "# preset=" << s.label << '\n';
  os << "x,omega,hilbert_omega\n";
  for (std::size_t i = 0; i < s.xs.size(); ++i)
    os << format_double(s.xs[i]) << ',' << format_double(s.omega[i]) << ','
       << format_double(s.hilbert_omega[i]) << '\n';
}

json snapshot_to_json(const SolutionSnapshot& s) {
  return json{{"t", s.t}, {"preset", s.label}, {"x", s.xs}, {"omega", s.omega}, {"hilbert_omega", s.hilbert_omega}};
}

SolutionSnapshot read_snapshot_csv(std::istream& is) {
  SolutionSnapshot s;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# t=", 0) == 0) {
      s.t = std::stod(line.substr(4));
    } else if (line.rfind("# preset=", 0) == 0) {
      s.label = line.substr(9);
    } else if (line[0] == '#') {
      continue;
    } else if (!header) {
      if (line != "x,omega,hilbert_omega") throw InvalidArgument("unexpected snapshot header: " + line);
      header = true;
    } else {
      std::istringstream row(line);
      std::string a, b, c;
      if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
        throw InvalidArgument("malformed snapshot row: " + line);
      s.xs.push_back(std::stod(a));
      s.omega.push_back(std::stod(b));
      s.hilbert_omega.push_back(std::stod(c));
    }
  }
  if (!header) throw InvalidArgument("snapshot CSV without header");
  return s;
}

SolutionSnapshot snapshot_from_json(const json& j) {
  SolutionSnapshot s;
  s.t = j.at("t").get<double>();
  s.label = j.value("preset", std::string{});
  s.xs = j.at("x").get<std::vector<double>>();
  s.omega = j.at("omega").get<std::vector<double>>();
  s.hilbert_omega = j.at("hilbert_omega").get<std::vector<double>>();
  if (s.omega.size() != s.xs.size() || s.hilbert_omega.size() != s.xs.size())
    throw InvalidArgument("snapshot JSON arrays differ in length");
  return s;
}

void write_trajectories_csv(std::ostream& os, std::span<const PoleTrajectory> branches) {
  os << "t,re_Z,im_Z,branch_id,event\n";
  for (const PoleTrajectory& b : branches) {
    for (const TrajectorySample& s : b.samples)
      os << format_double(s.t) << ',' << format_double(s.z.real()) << ',' << format_double(s.z.imag()) << ','
         << b.branch_id << ",\n";
    for (const TrajectoryEvent& e : b.events)
      os << format_double(e.t) << ',' << format_double(e.z.real()) << ',' << format_double(e.z.imag()) << ','
         << b.branch_id << ',' << to_string(e.kind) << '\n';
  }
}

json scaling_report_to_json(const ScalingReport& r) {
  json samples = json::array();
  for (const ScaleSample& s : r.samples)
    samples.push_back({{"T_minus_t", s.tau}, {"peak", s.peak}, {"x_peak", s.x_peak}, {"fwhm", s.fwhm}});
  return json{{"c_omega", r.c_omega},
              {"c_l", r.c_l},
              {"c_s", r.c_s},
              {"c_s_degenerate", r.c_s_degenerate},
              {"windows", {{"T_minus_t_min", r.tau_min}, {"T_minus_t_max", r.tau_max}}},
              {"residuals", {{"omega", r.rms_omega}, {"l", r.rms_l}, {"s", r.rms_s}}},
              {"power_relation_defect", r.power_relation_defect},
              {"samples", samples}};
}

void write_scale_samples_csv(std::ostream& os, const ScalingReport& r) {
  os << "T_minus_t,peak,x_peak,fwhm\n";
  for (const ScaleSample& s : r.samples)
    os << format_double(s.tau) << ',' << format_double(s.peak) << ',' << format_double(s.x_peak) << ','
       << format_double(s.fwhm) << '\n';
}

void write_profile_errors_csv(std::ostream& os, std::span<const ProfileError> rows) {
  os << "T_minus_t,err_omega,err_hilbert\n";
  for (const ProfileError& r : rows)
    os << format_double(r.tau) << ',' << format_double(r.err_omega) << ',' << format_double(r.err_hilbert) << '\n';
}

json polynomial_to_json(const Polynomial& p) {
  json out = json::array();
  for (const cplx c : p.coeffs()) out.push_back({c.real(), c.imag()});
  return out;
}

Polynomial polynomial_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("polynomial must be an array of [re, im] pairs");
  std::vector<cplx> c;
  for (const json& e : j) {
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2) {
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw InvalidArgument("polynomial coefficient must be a number or [re, im]");
    }
  }
  return Polynomial(std::move(c));
}

json rational_to_json(const RationalFunction& f) {
  return json{{"eta0", {{"num", polynomial_to_json(f.num())}, {"den", polynomial_to_json(f.den())}}}};
}

RationalFunction read_datum_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open datum file " + path.string());
  json j;
  try {
    in >> j;
    const json& e = j.at("eta0");
    return RationalFunction(polynomial_from_json(e.at("num")), polynomial_from_json(e.at("den")));
  } catch (const json::exception& ex) {
    throw InvalidArgument("bad datum file " + path.string() + ": " + ex.what());
  }
}

json to_json(const RunManifest& m) {
  std::string ts = m.timestamp;
  if (ts.empty()) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    ts = buf;
  }
  return json{{"command", m.command}, {"preset", m.preset}, {"parameters", m.parameters}, {"outputs", m.outputs},
              {"argv", m.argv},       {"version", m.version}, {"timestamp", ts}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.preset = j.value("preset", std::string{});
  m.parameters = j.value("parameters", std::map<std::string, std::string>{});
  m.outputs = j.value("outputs", std::vector<std::string>{});
  m.argv = j.value("argv", std::vector<std::string>{});
  m.version = j.value("version", std::string{});
  m.timestamp = j.value("timestamp", std::string{});
  return m;
}

}  // namespace clm
