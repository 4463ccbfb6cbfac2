#pragma once

#include <iosfwd>

namespace e8 {

// The e8forge command line. Returns 0 on success, 1 when a verification
// fails (the report is still written), 2 on usage or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace e8
