#pragma once

#include <ostream>

namespace demres::cli {

/// Exit codes: 0 success, 1 validation error, 2 pipeline disagreement.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace demres::cli
