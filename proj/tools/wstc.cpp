#include <iostream>
#include <string>
#include <vector>

#include "wstc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wstc::run_cli(args, std::cout, std::cerr);
}
