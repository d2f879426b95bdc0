#include "bellman/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return bellman::cli::run(argc, argv, std::cout, std::cerr);
}
