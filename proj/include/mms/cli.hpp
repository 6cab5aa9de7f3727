#pragma once

#include <iosfwd>

namespace mms {

/// Command-line entry point. Exit codes: 0 success, 1 verification failure,
/// 2 input error, 3 internal invariant violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mms
