#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bwbforge::cli {

enum Exit : int { Exact = 0, Failure = 1, AmbiguousAllowed = 2 };

/// Full command-line entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bwbforge::cli
