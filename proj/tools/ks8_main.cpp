#include "ks8/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  auto parsed = ks8::cli::parse_args(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return ks8::cli::run(*parsed.config, std::cout, std::cerr);
}
