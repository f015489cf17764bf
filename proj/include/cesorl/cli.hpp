#pragma once

#include <iosfwd>

namespace cesorl {

/// Exit codes: 0 success, 2 undetermined or inconclusive, 1 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUndetermined = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cesorl
