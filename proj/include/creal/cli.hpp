#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cr::cli {

enum ExitStatus : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cr::cli
