#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace partita::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

// Runs one `partita` invocation. args excludes the program name. Normal
// output goes to out (or --out PATH), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace partita::cli
