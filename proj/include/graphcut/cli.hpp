#pragma once

namespace graphcut {

/// Entry point of the graphcut command line tool. Returns the process exit
/// code: 0 success, 2 usage or parameter error, 3 capacity error,
/// 4 infeasible constraint.
int run_cli(int argc, const char* const* argv);

}  // namespace graphcut
