#include <iostream>

#include "opmk_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return opmk::cli::run(args, std::cin, std::cout, std::cerr);
}
