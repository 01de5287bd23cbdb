#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iflat::cli {

enum ExitCode : int { kOk = 0, kViolated = 1, kInputError = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`. With `color`, PASS/FAIL markers are styled.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace iflat::cli
