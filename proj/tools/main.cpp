#include <iostream>
#include <string>
#include <vector>

#include "qekr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qekr::cli::dispatch(args, std::cout, std::cerr);
}
