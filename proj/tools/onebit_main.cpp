#include <iostream>
#include <string>
#include <vector>

#include "onebit/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return onebit::run_cli(args, std::cout, std::cerr);
}
