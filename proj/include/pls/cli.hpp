#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pls {

/// Exit codes: 0 success, 1 not proved / invalid / not derived, 2 usage or load error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pls
