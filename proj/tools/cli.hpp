#pragma once

#include <ostream>

namespace ncsphere::cli {

// Exit codes
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kDomain = 3;

// Entry point shared by the executable and the tests. Output that is not
// redirected with --out goes to `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ncsphere::cli
