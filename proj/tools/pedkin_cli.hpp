#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pedkin::cli {

// Exit codes: 0 success, 1 failure or verification mismatch, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs `pedkin <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pedkin::cli
