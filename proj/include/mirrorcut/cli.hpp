#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace mirrorcut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Runs `mirrorcut <experiment> [flags]`. `args` excludes the program name.
/// Artifacts go to --out, or to `out` when no path is given; diagnostics go
/// to `err`. Returns 0, 2 (bad configuration) or 3 (runtime failure).
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace mirrorcut::cli
