#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ceger {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point behind the `ceger` executable. `args` excludes the program
/// name. Subcommands: align, compile, expand, score, synthesize, report.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ceger
