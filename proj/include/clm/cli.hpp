#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clm {

// Runs the clmlab command line; args excludes the program name. Returns
// the process exit status: 0 ok, 1 usage, 2 domain error, 3 guard tripped.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clm
