#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return nashzero::RunCli(argc, argv, std::cout, std::cerr);
}
