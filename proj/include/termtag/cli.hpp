#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace termtag::cli {

// Entry point of the termtag tool. `out`/`err` stand in for stdout/stderr
// so tests can drive the tool in-process; "-" paths refer to the given
// streams (stdin is std::cin).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace termtag::cli
