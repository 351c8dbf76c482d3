#include <iostream>
#include <string>
#include <vector>

#include "levyprem_cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return levyprem::cli::run_cli(args, std::cout, std::cerr);
}
