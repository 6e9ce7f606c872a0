#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pstab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

// Entry point of the `pstab` tool. `args` excludes the program name. Data goes
// to `out`, diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pstab
