#include <iostream>

#include "hoopstat_cli/cli.hpp"

int main(int argc, char** argv) {
  return hoopstat::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
