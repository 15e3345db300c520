#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtd::cli {

/// Exit codes: 0 success, 1 usage error, 2 domain or degeneracy error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// Runs the command line in-process. Artifacts without --out go to `out`;
/// diagnostics are one line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtd::cli
