#include <iostream>
#include <string>
#include <vector>

#include "wchaos/expcli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return wchaos::expcli::cli_main(args, std::cout, std::cerr);
}
