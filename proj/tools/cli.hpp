#pragma once

#include <iosfwd>

namespace rips::cli {

/// Exit codes: 0 success or check passed, 1 check failed, 2 input error,
/// 3 budget or margin error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rips::cli
