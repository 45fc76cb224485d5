#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace platoon::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitVerifyMismatch = 3;

// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace platoon::cli
