#pragma once

#include <iosfwd>

namespace bpso {

/// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int parse_and_dispatch(int argc, const char* const* argv);

}  // namespace bpso
