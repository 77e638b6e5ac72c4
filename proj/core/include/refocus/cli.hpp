#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace refocus::cli {

// Exit codes: 0 success, 1 usage error, 2 input or capacity error,
// 3 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitVerification = 3;

/// Runs the command line front end. args excludes the program name.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace refocus::cli
