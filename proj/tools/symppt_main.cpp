#include <iostream>
#include <string>
#include <vector>

#include "symppt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return symppt::cli::run(args, std::cout, std::cerr);
}
