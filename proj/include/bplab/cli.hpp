#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bplab {

// Runs the bplab command line (args excludes the program name). Returns the
// process exit code: 0 success, 2 parameter error, 3 capacity or deficit
// error, 4 I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bplab
