#include <iostream>
#include <string>
#include <vector>

#include "lexsparql/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lexsparql::run_cli(args, std::cout, std::cerr);
}
