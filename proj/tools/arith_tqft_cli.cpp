#include <iostream>
#include <string>
#include <vector>

#include "arith_tqft/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return arith_tqft::cli::run(args, std::cout, std::cerr);
}
