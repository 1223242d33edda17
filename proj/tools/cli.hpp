#pragma once

#include <string>
#include <vector>

namespace sched::cli {

// Parses one subcommand invocation (without the program name) and executes
// it. Returns the process exit code: 0 success, 1 verification failure,
// 2 usage or input error.
int dispatch(const std::vector<std::string>& args);

}  // namespace sched::cli
