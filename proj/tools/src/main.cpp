#include <iostream>
#include <string>
#include <vector>

#include "zetaburst_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return zetaburst::cli::run_command(args, std::cout, std::cerr);
}
