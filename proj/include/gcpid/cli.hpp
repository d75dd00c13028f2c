#pragma once

#include <ostream>

namespace gcpid {

/// Command line entry point. Returns 0 on success, 1 on runtime failure and
/// 2 on usage errors; --help prints usage and returns 0.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gcpid
