#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bcalc {

/// Runs the command line (without the program name). Returns the exit code:
/// 0 success, 1 malformed input, 2 violated theorem hypothesis.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcalc
