#pragma once

#include <ostream>

namespace phantom::cli {

// Exit codes: 0 success, 1 a verification failed, 2 usage or parameter error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace phantom::cli
