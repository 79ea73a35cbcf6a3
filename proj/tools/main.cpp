#include <iostream>
#include <string>
#include <vector>

#include "evendct/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return evendct::cli::run(args, std::cout, std::cerr);
}
