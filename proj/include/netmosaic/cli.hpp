#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netmosaic {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitData = 3, kExitNumerical = 4 };

/// Entry point of the `netmosaic` tool. `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netmosaic
