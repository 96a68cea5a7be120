#pragma once

#include <iosfwd>

namespace gsteer::cli {

/// Entry point of the `gsteer` tool. Exit codes: 0 success, 1 I/O, usage or
/// schema error, 2 input object fails its validity condition.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gsteer::cli
