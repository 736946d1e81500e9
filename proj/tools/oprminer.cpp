#include <iostream>
#include <string>
#include <vector>

#include "opr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return opr::run_cli(args, std::cout, std::cerr);
}
