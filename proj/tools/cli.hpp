#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperego::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kMalformedInput = 2,
    kNoEligibleEgos = 3,
    kTrainingFailed = 4,
    kReconstructionFailed = 5,
    kBoundViolated = 6,
};

/// Runs one command line (args[0] is the program name). Summaries go to
/// `out`, diagnostics to `err`; data goes to files under --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperego::cli
