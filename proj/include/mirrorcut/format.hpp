#pragma once

#include <string>

namespace mirrorcut {

/// Shortest-independent decimal form used by every text artifact:
/// 17 significant digits ("%.17g"), which round-trips any double.
[[nodiscard]] std::string format_double(double value);

} // namespace mirrorcut
