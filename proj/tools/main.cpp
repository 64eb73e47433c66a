// Entry point for the genfib command line tool.

#include "genfib/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return genfib::cli::run(args, std::cout, std::cerr);
}
