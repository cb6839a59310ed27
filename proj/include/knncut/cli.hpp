#pragma once

#include <iosfwd>

namespace knncut {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv and runs one subcommand: sample, graph, cut, continuum, tl1,
/// experiment or figures. Results go to `out` (JSON when no --out is given),
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace knncut
