// SPDX-License-Identifier: Apache-2.0
#include "bbgwo/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return bbgwo::cli::run(std::vector<std::string>(argv, argv + argc), std::cout,
                         std::cerr);
}
