#include <iostream>
#include <string>
#include <vector>

#include "qpolar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qpolar::cli::run(args, std::cout, std::cerr);
}
