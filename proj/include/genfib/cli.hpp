#pragma once
// Command line front end: flag parsing, dispatch, report rendering.

#include <iosfwd>
#include <string>
#include <vector>

namespace genfib::cli {

// Runs one command line (program name excluded). The rendered report goes to
// out, diagnostics to err. Exit codes: 0 success, 1 internal inconsistency or
// an identity failing where none was expected, 2 usage or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genfib::cli
