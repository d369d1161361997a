#include <iostream>

#include "npspace/cli.hpp"

int main(int argc, char** argv) {
  return npspace::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
