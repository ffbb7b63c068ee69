#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hopcut::cli {

// Entry point shared by the hopcut binary and the CLI tests. `args` excludes
// the program name. Exit codes: 0 success, 1 runtime failure, 2 usage or
// configuration error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hopcut::cli
