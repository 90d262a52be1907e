#pragma once

#include <iosfwd>

namespace linegrade::cli {

/// Runs the `linegrade` command line. Exit codes: 0 success, 1 some answer
/// did not match fully (`test`), 2 usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace linegrade::cli
