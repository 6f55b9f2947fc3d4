#include <iostream>
#include <string>
#include <vector>

#include "concnls/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return concnls::run_cli(args, std::cout, std::cerr);
}
