#include <iostream>

#include "rellich_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rellich::cli::run(args, std::cout, std::cerr);
}
