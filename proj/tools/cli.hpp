#pragma once

#include <iosfwd>

namespace asymptotica::cli {

// Exit codes: 0 success, 1 numerical failure or failed check, 2 argument
// error. Errors go to err as one JSON object.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asymptotica::cli
