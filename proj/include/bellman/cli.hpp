#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellman::cli {

/// Exit codes: 0 success, 1 a check or attainment failed, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the brute-force worker count (default 1).
inline constexpr const char* kWorkersEnv = "BELLMAN_WORKERS";

int run(int argc, char** argv, std::ostream& out, std::ostream& err);
/// Same, with args excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bellman::cli
