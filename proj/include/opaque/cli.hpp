#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opaque::cli {

// Run the command-line tool in-process.  `args` excludes the program name.
// Exit codes:
//   0  success (verify: certified opaque; audit: every applicable check holds)
//   1  usage error or malformed scene input
//   2  verify found a validated missing line (non-opaque)
//   3  verify was inconclusive at the configured resolution
//   4  audit found a violated inequality
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(const std::vector<std::string>& args);

int run_main(int argc, char** argv);

}  // namespace opaque::cli
