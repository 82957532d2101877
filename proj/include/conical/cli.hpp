#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conical::cli {

/// Runs the command-line interface.  Exit codes: 0 success (and, for verify,
/// "is a design"), 1 negative scientific verdict, 2 domain or parameter
/// error, 3 I/O or parse failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conical::cli
