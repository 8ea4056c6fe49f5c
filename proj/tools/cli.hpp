#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hmpeq::cli {

/// Exit codes. Scripts may rely on these and nothing else.
inline constexpr int kExitEquivalent = 0;
inline constexpr int kExitNotEquivalent = 1;
inline constexpr int kExitError = 2;

/// Version of the text and JSON output layouts.
inline constexpr int kFormatVersion = 1;

/// Environment variable holding the default float-mode tolerance.
inline constexpr const char* kToleranceEnv = "HMPEQ_TOLERANCE";

/// Runs the command line `args` (args[0] is the program name) writing
/// results to `out` and diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hmpeq::cli
