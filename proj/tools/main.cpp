#include <iostream>
#include <string>
#include <vector>

#include "twoclubs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return twoclubs::cli::run(args, std::cout, std::cerr);
}
