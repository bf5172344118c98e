#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gfpm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one `gfpm` invocation. `args` excludes the program name. Results go
// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gfpm::cli
