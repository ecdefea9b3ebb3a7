#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace branegauge {

// Parses and executes one command line (without the program name).
// Returns the process exit code: 0 on success, 1 for input or validation
// problems, 2 when an internal consistency check fails.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace branegauge
