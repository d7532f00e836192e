#include <iostream>
#include <string>
#include <vector>

#include "seagrass/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return seagrass::run_cli(args, std::cout, std::cerr);
}
