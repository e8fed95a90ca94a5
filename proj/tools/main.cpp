#include <iostream>

#include "hosc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hosc::cmd_dispatch(args, std::cout, std::cerr);
}
