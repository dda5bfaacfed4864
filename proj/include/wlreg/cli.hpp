#pragma once

#include <iosfwd>

namespace wlreg::cli {

// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.
int run(int argc, const char* const* argv);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wlreg::cli
