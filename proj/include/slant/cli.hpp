#pragma once

// Command-line front end. Output is produced in full before anything is
// written, so a failing invocation leaves stdout empty.
//
// Exit codes: 0 success / member / zero, 1 computed negative,
// 2 usage or input error, 3 numeric error.

#include <iosfwd>
#include <string>
#include <vector>

namespace slant::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNumeric = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slant::cli
