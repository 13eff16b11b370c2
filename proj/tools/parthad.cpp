#include <iostream>
#include <string>
#include <vector>

#include "parthad/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = parthad::cli::run(args);
  std::cout << result.report;
  std::cerr << result.diagnostics;
  return result.exit_code;
}
