#include <iostream>
#include <string>
#include <vector>

#include "nrep/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return nrep::cli::run(args, std::cout, std::cerr);
}
