#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gascap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. CSV output goes to files named by --out, or to `out` when
/// --out is "-".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gascap::cli
