#pragma once

#include <iosfwd>

namespace gridclass::cli {

/// Runs one command line. Returns 0 on success, 1 on input errors and 2 when
/// a resource budget ran out (partial results are still written).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gridclass::cli
