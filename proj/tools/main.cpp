#include "pencil/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = pencil::run(args);
  std::cout << r.output;
  std::cerr << r.diagnostics;
  return r.exit_code;
}
