#include <iostream>
#include <string>
#include <vector>

#include "circrank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return circrank::cli::run(args, std::cout, std::cerr);
}
