#include <iostream>

#include "bbc/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return bbc::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
