#include <iostream>

#include "fgap/cli.hpp"

int main(int argc, char** argv) {
  return fgap::run_cli(argc, argv, std::cout, std::cerr);
}
