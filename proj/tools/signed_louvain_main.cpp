#include <iostream>
#include <string>
#include <vector>

#include "signed_louvain/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return signed_louvain::cli::run(args, std::cout, std::cerr);
}
