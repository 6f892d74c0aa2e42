#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "errscope/cli.hpp"

int main(int argc, char** argv) {
  const bool color = std::getenv("ERRSCOPE_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO) != 0;
  return errscope::cli::run(argc, argv, {std::cout, std::cerr, color});
}
