#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shs {
namespace cli {

// Exit codes: 0 success, 1 violations found, 2 input error, 3 numerical
// non-convergence.
int execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

int execute(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace cli
} // namespace shs
