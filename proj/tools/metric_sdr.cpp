#include <iostream>
#include <string>
#include <vector>

#include "metric_sdr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return metric_sdr::cli::run(args, std::cout, std::cerr);
}
