#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qme/error.hpp"

namespace qme::cli {

// Exit statuses of the qme binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDimension = 3;
inline constexpr int kExitGuard = 4;
inline constexpr int kExitNotASolvent = 5;
inline constexpr int kExitNumerical = 6;

int exit_code_for(ErrorCode code);

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`; the return value is the exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qme::cli
