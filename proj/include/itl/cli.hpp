#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace itl {

// Entry point behind the itl-rev binary. Returns the process exit code:
// 0 = property holds / run completed, 1 = fails or counterexample found,
// 2 = usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itl
