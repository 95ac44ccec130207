// agx - finite magma identity checking and enumeration

#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return agx::cli::run(std::move(args), std::cout, std::cerr);
  } catch (std::exception const& e) {
    std::cerr << "agx: " << e.what() << "\n";
    return agx::cli::kInputError;
  }
}
