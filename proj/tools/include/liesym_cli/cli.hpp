#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace liesym::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 when an analysis check fails and 2 on invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liesym::cli
