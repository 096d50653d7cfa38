#include <iostream>

#include "newton2d/cli.hpp"

int main(int argc, char** argv) {
  return newton2d::cli::run(argc, argv, std::cout, std::cerr);
}
