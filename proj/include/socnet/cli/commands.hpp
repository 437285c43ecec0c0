#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "socnet/error.hpp"

namespace socnet::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitParse = 3,
    kExitIo = 4,
    kExitCompute = 5,
};

class UsageError : public Error {
public:
    using Error::Error;
};

/// Full command-line entry point. `args` excludes the program name.
/// Subcommands: stats, metrics, sample, robustness, report, replay.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* tool_version();

} // namespace socnet::cli
