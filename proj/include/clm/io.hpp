#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "clm/asymptotics.hpp"
#include "clm/exact.hpp"
#include "clm/poles.hpp"
#include "clm/polynomial.hpp"
#include "clm/rational.hpp"

namespace clm {

using json = nlohmann::json;

// %.17g with '.' as the decimal separator.
std::string format_double(double v);

// "# t=...", "# preset=..." then x,omega,hilbert_omega.
void write_snapshot_csv(std::ostream& os, const SolutionSnapshot& s);
json snapshot_to_json(const SolutionSnapshot& s);
// Throws InvalidArgument on malformed input.
SolutionSnapshot read_snapshot_csv(std::istream& is);
SolutionSnapshot snapshot_from_json(const json& j);

// t,re_Z,im_Z,branch_id,event; an event row repeats the position of the
// event with its kind in the last column.
void write_trajectories_csv(std::ostream& os, std::span<const PoleTrajectory> branches);

json scaling_report_to_json(const ScalingReport& r);
void write_scale_samples_csv(std::ostream& os, const ScalingReport& r);

// T_minus_t,err_omega,err_hilbert
void write_profile_errors_csv(std::ostream& os, std::span<const ProfileError> rows);

// [[re, im], ...] ascending.
json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j);

// {"eta0": {"num": [...], "den": [...]}}
json rational_to_json(const RationalFunction& f);
RationalFunction read_datum_file(const std::filesystem::path& path);

struct RunManifest {
  std::string command;
  std::string preset;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> outputs;
  std::vector<std::string> argv;
  std::string version = CLM_VERSION;
  // ISO 8601 UTC; filled by to_json when empty.
  std::string timestamp;
};

json to_json(const RunManifest& m);
RunManifest manifest_from_json(const json& j);

}  // namespace clm
