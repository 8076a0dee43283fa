#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace alg::cli {

enum ExitCode { ok = 0, check_failed = 1, usage = 2 };

// Entry point of the command-line tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace alg::cli
