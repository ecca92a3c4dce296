#include <iostream>

#include "permgraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return permgraph::dispatch(args, std::cout, std::cerr);
}
