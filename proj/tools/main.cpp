#include <iostream>
#include <string>
#include <vector>

#include "lsa/cli.hpp"

int main(int argc, char** argv) {
  return lsa::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
