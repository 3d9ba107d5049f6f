#include "mvclass/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return mvclass::cli::run(argc, argv, std::cout, std::cerr);
}
