#include <iostream>

#include <unistd.h>

#include "doxa/cli.hpp"

int main(int argc, char** argv) {
  return doxa::cli::run(argc, argv, std::cout, std::cerr, ::isatty(STDOUT_FILENO) != 0);
}
