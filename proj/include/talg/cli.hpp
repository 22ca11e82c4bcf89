#pragma once

#include "talg/verify.hpp"

#include <string>
#include <vector>

namespace talg::cli {

inline constexpr const char* kTool = "talg";
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { Ok = 0, Invalid = 2, OutOfBudget = 3, Violation = 4 };

struct JobConfig {
    std::string subcommand;
    std::vector<std::string> inputs;
    Budgets budgets;
    std::uint64_t seed = 1;
    bool json = false;
    bool quiet = false;
};

/// Parses argv, runs one job, writes the result to `out` and diagnostics to
/// `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace talg::cli
