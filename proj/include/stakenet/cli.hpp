#ifndef STAKENET_CLI_HPP
#define STAKENET_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace stakenet::cli {

/// Runs one CLI invocation. args excludes the program name.
/// Exit codes: 0 success, 1 domain or validation error, 2 I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stakenet::cli

#endif
