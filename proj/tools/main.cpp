#include "otl/cli.h"

#include <iostream>

int main(int argc, char** argv) {
  return otl::cli::run(argc, argv, std::cout, std::cerr);
}
