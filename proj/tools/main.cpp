#include <iostream>

#include "toeplitz_bounds/cli.hpp"

int main(int argc, char** argv) {
  return tb::cli::main(argc, argv, std::cout, std::cerr);
}
