#include <iostream>
#include <string>
#include <vector>

#include "diamond/cli.hpp"

int main(int argc, char** argv) {
  return diamond::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
