#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qekr::cli {

// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qekr::cli
