#include <iostream>
#include <string>
#include <vector>

#include "refocus/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return refocus::cli::run(args, std::cin, std::cout, std::cerr);
}
