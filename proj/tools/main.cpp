#include "mqdyn/runner.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return mqdyn::run_cli(argc, argv, std::cout, std::cerr);
}
