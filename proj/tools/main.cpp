#include <iostream>

#include "qmonty_cli.hpp"

int main(int argc, char** argv) {
  return qmonty::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
