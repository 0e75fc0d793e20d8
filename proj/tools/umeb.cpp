#include <string>
#include <vector>

#include "umeb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return umeb::cli::run(args);
}
