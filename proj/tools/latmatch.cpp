#include <iostream>
#include <string>
#include <vector>

#include "latmatch/shell.hpp"

int main(int argc, char** argv) {
  return latmatch::shell::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
