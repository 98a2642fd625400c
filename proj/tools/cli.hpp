#ifndef LAMCOUNT_TOOLS_CLI_HPP_
#define LAMCOUNT_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace lamcount::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace lamcount::cli

#endif  // LAMCOUNT_TOOLS_CLI_HPP_
