#include <iostream>

#include "phonoblock/cli.hpp"

int main(int argc, char** argv) {
  return phonoblock::cli_main(argc, argv, std::cout, std::cerr);
}
