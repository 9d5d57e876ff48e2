#pragma once

#include <iosfwd>

namespace mapflock::cli {

// Exit codes: 0 success, 1 config/IO/runtime failure, 2 usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mapflock::cli
