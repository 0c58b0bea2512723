#pragma once

#include <ostream>

namespace formexp {

// Exit codes: 0 ok, 1 verification failed, 2 parse or load error,
// 3 truncation overflow, 4 unmet precondition.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace formexp
