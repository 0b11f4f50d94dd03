#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dephase {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCompute = 3;
inline constexpr int kExitIo = 4;

/// Runs the command line `args` (without the program name). Data goes to
/// `out` (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dephase
