#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace salp::cli {

/// Exit codes: 0 success, 2 config error, 3 IO error, 4 overwrite guard.
enum ExitCode : int { ok = 0, config_error = 2, io_error = 3, overwrite_refused = 4 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace salp::cli
