#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crvn::cli {

// Exit codes, one per documented error path.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInfeasible = 4;
inline constexpr int kExitValidationFail = 5;

/// Runs the full command line (without argv[0]) against the given streams.
/// Reports go to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crvn::cli
