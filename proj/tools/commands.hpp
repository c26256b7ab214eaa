#pragma once

#include <iosfwd>

namespace fomul::cli {

/// Entry point shared by the executable and the tests. Returns the process exit
/// status: 0 success, 1 module error, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fomul::cli
