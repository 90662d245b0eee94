#include <iostream>

#include "rigidlab/cli.hpp"

int main(int argc, char** argv) {
  return rigidlab::cli::run(argc, argv, std::cout, std::cerr);
}
