#include <iostream>
#include <string>
#include <vector>

#include "splcsp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return splcsp::run_cli(args, std::cout, std::cerr);
}
