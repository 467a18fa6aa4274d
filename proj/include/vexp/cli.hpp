#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vexp {

// Runs the command line tool. Returns 0 on success, 1 when a check or suite
// fails, 2 on configuration or usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vexp
