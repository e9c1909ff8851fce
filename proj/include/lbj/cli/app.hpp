#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lbj::cli {

/// Runs the tool on `args` (without the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// key=value lines; '#' starts a comment, blank lines are skipped, keys may
/// carry a leading "--".
std::map<std::string, std::string> parse_config(std::istream& in);

/// Splits "1, 2.5,3" into reals / integers.
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace lbj::cli
