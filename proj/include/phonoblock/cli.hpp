#pragma once

#include <iosfwd>

namespace phonoblock {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerify = 3;

// Entry point of the phonoblock tool. Output goes to out, diagnostics to err.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace phonoblock
