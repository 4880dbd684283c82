#pragma once

#include <iosfwd>

namespace homest {

/// Runs the `homest` command line. Human-readable text goes to `out`,
/// diagnostics to `err`; machine-readable output goes to `out` or to the
/// files named by --out style flags. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homest
