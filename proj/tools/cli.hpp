#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace omega::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRegime = 3;
inline constexpr int kExitMcMismatch = 4;

/// verify-mc flags a check when |z| exceeds this.
inline constexpr double kMcZLimit = 4.0;

/// Runs one invocation (args exclude the program name). Artifact paths go to out,
/// structured error JSON to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omega::cli
