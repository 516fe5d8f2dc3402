#include <iostream>
#include <string>
#include <vector>

#include "ekr2/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ekr2::run(args, std::cout, std::cerr);
}
