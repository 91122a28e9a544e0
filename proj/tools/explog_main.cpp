#include <vector>

#include "explog/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return explog::run_cli(std::move(args));
}
