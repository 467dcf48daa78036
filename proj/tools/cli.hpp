#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netclass::cli {

/// Runs one command line (args exclude the program name). Results go to
/// files or `out`; the resolved run configuration and any JSON error go to
/// `err`. Returns 0 on success, 1 on invalid input, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netclass::cli
