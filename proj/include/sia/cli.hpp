#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sia::cli {

/// Runs one subcommand (classify | index | consensus | gallery | breaker |
/// simulate | maxindex) against the given argument list (program name
/// excluded). Returns 0 on success, 1 on a domain error such as a
/// non-stochastic input, 2 on a usage error.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sia::cli
