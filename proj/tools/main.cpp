#include <iostream>
#include <string>
#include <vector>

#include "p2moduli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return p2moduli::run(args, std::cout, std::cerr);
}
