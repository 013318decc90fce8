#include <iostream>
#include <string>
#include <vector>

#include "gmlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gmlab::cli::main_entry(args, std::cout, std::cerr);
}
