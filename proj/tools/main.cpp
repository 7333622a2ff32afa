#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return m7inv::cli::run(argc, argv, std::cout, std::cerr);
}
