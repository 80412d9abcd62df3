#include <iostream>
#include <string>
#include <vector>

#include "swinf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return swinf::run_cli(args, std::cout, std::cerr);
}
