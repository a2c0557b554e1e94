#include <iostream>
#include <string>
#include <vector>

#include "tdoa/cli.hpp"

int main(int argc, char** argv) {
  return tdoa::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
