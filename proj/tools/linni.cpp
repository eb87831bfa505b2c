#include <iostream>
#include <string>
#include <vector>

#include "linni/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return linni::cli::run(args, std::cout, std::cerr, linni::cli::process_environment());
}
