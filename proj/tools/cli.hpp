#pragma once

// The `signet` command line. Exit codes: 0 ok, 1 domain failure (invalid
// graph, failed certificate, unmet --expect), 2 usage or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace signet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace signet::cli
