#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hetnet {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitRuntime = 3 };

/// Entry point of the hetnet_sim tool. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hetnet
