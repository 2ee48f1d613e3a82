#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chscan {

// Full command-line driver. args excludes the program name. CSV results go to
// out, diagnostics to err; returns the process exit code (0 only when every
// requested check passed and no errors occurred).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chscan
