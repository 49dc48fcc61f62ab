#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncprism::cli {

/// Runs the command line `args` (without the program name). JSON input is
/// read from `in` unless --in is given; the payload goes to `out` (or --out).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ncprism::cli
