#pragma once

// Command-line front end: charpoly, minpoly, multiplicities, sympower, verify.

#include <iosfwd>

namespace bbc {

enum ExitCode { kExitOk = 0, kExitInput = 2, kExitComputation = 3, kExitMismatch = 4 };

/// Run the tool with `-` bound to the given streams. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bbc
