#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skewgeo {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // a check failed or an unexpected error
inline constexpr int kExitBadInput = 2;     // malformed file, bad arguments, out-of-domain parameters
inline constexpr int kExitDegenerate = 3;   // every observation is zero

/// Runs `skewgeo <args...>` (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewgeo
