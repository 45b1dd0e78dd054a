#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace typdeg::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// TYPDEG_* variables that take part in configuration.
using Environment = std::map<std::string, std::string>;
Environment process_environment();

/// Runs one invocation; `args` excludes the program name. Human output goes
/// to `out`, diagnostics to `err`, machine output to --out.
/// Exit status: 0 ok, 1 verification failure, 2 usage/parse/cap/IO error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const Environment& env = {});

}  // namespace typdeg::cli
