#include <iostream>

#include "ultranorm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ultranorm::cli::run(args, std::cout, std::cerr);
}
