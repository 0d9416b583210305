#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twistor::cli {

/// Runs one subcommand. args excludes the program name.
/// Exit codes: 0 all checks pass, 1 a check failed or the input is out of domain, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal rendering; "nan" and "inf" for non-finite values.
std::string format_double(double v);

}  // namespace twistor::cli
