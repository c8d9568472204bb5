#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ubeta {

/// Runs the `ubeta` command line (arguments without the program name).
/// Returns 0 on success, 2 on domain or usage errors, 3 on budget and
/// undecided outcomes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ubeta
