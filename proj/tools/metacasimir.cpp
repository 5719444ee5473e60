#include <iostream>
#include <string>
#include <vector>

#include "metacasimir/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return metacasimir::run_cli(args, std::cout, std::cerr);
}
