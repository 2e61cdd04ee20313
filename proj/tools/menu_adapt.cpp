#include <iostream>
#include <string>
#include <vector>

#include "menu_adapt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return menu_adapt::cli::run(std::move(args), std::cout, std::cerr);
}
