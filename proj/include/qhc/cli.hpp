// Command-line driver. Exit codes: 0 all checks pass, 1 a check failed,
// 2 bad input, 3 a resource budget was exceeded.
#pragma once

#include <iosfwd>

namespace qhc {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhc
