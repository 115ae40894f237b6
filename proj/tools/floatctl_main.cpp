#include <string>
#include <vector>

#include "floatctl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return floatctl::run_cli(args);
}
