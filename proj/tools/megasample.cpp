#include <iostream>

#include "mga/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mga::cli_main(args, std::cout, std::cerr);
}
