#include <iostream>
#include <string>
#include <vector>

#include "dopsym/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dopsym::cli::run(args, std::cout, std::cerr);
}
