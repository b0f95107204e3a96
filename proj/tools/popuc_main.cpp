#include <iostream>

#include "popuc/cli.hpp"

int main(int argc, char** argv) {
  return popuc::cli::main_with_args(argc, argv, std::cout, std::cerr);
}
