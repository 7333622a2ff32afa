#pragma once

#include <iosfwd>

namespace m7inv::cli {

/// Runs the command-line tool. Exit codes: 0 = positive verdict / success,
/// 1 = negative verdict, 2 = error (malformed input, invariant violations).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace m7inv::cli
