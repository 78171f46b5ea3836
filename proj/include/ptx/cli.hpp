#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptx {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kNegative = 1, kIoError = 2, kPrecondition = 3 };

/// args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptx
