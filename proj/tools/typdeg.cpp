#include <iostream>

#include "typdeg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return typdeg::cli::run_command(args, std::cout, std::cerr, typdeg::cli::process_environment());
}
