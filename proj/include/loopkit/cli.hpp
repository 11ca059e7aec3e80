#pragma once

#include <iosfwd>

namespace loopkit::cli {

// Runs the command-line front end on the given argument vector, writing
// regular output to `out` and diagnostics to `err`.  Returns the process
// exit code: 0 on success, 1 on usage or configuration errors, 2 on bad
// input data, 3 when the validation suite reports failures.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

// Same, bound to std::cout / std::cerr.
int run(int argc, const char* const* argv);

}  // namespace loopkit::cli
