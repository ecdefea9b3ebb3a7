#include <iostream>
#include <string>
#include <vector>

#include "branegauge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return branegauge::run(args, std::cout, std::cerr);
}
