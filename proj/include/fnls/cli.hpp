#pragma once

#include <iosfwd>

namespace fnls {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `fnls` tool. Data goes to `out` or files, diagnostics
/// to `err`. Returns 0 on success, 1 when a check fails and 2 on usage or
/// configuration errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fnls
