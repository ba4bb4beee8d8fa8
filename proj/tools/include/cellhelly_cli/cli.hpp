#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cellhelly::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kOutOfScope = 2;       // infinite or non-spherical where finite is needed
inline constexpr int kOracleUnsupported = 3;
inline constexpr int kCheckFailed = 4;      // a verification ran and found violations

// args excludes the program name. JSON reports go to `out`, summaries and
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellhelly::cli
