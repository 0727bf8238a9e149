#include <iostream>
#include <string>
#include <vector>

#include "hetnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hetnet::run_command(args, std::cout, std::cerr);
}
