#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgraph::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_bound = 2;
inline constexpr int exit_malformed = 3;

/// Runs one command. `args` includes the program name. Reports go to `out`
/// as JSON, diagnostics to `err`; graph documents named "-" are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace kgraph::cli
