#include <iostream>
#include <string>
#include <vector>

#include "selfpair/cli.hpp"

int main(int argc, char** argv) {
  return selfpair::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
