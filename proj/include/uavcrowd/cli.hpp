#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace uavcrowd
{
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

/// Entry point of the `uavcrowd` tool; args excludes the program name.
int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);
}  // namespace uavcrowd
