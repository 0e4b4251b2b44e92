#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meander::cli {

// Exit codes: 0 success or pass, 1 computation or verification failure,
// 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meander::cli
