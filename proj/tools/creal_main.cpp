#include <iostream>
#include <string>
#include <vector>

#include "creal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cr::cli::dispatch(args, std::cout, std::cerr);
}
