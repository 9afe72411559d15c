#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selcol {

/// Exit statuses of `run`.
enum ExitCode { exit_yes = 0, exit_no = 1, exit_error = 2 };

/// Command-line entry point; `args` excludes the program name. Structured output
/// goes to `out`, the human summary and errors to `err`. `in` backs the `-` path.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace selcol
