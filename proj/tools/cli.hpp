#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdesign::cli {

// Exit codes: 0 success or pass, 1 verification failure (verdict on out),
// 2 usage or input error, 3 internal error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace fdesign::cli
