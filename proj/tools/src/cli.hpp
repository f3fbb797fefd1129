#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oufpt::cli {

/// Runs the CLI with the given arguments (excluding argv[0]). Output goes to
/// `out`, diagnostics to `err`. Exit codes: 0 ok, 2 config error, 3 suite
/// failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oufpt::cli
