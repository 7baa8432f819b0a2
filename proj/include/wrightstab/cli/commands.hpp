#pragma once

#include <ostream>

#include "wrightstab/cli/config.hpp"

namespace wrightstab::cli {

inline constexpr int kExitOk = 0;       // success, all checks pass, certified
inline constexpr int kExitFailed = 1;   // a check failed or not certified
inline constexpr int kExitInvalid = 2;  // bad flags, config or parameters; I/O failure

// Full command-line entry point: argv[0] is the program name. Never returns
// anything but 0, 1 or 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Runs an already assembled configuration.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace wrightstab::cli
