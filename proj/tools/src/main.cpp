#include <iostream>

#include "contest_cli/cli.hpp"

int main(int argc, char** argv) {
  int code = 0;
  const auto cfg = contest::cli::parse_args(argc, argv, code);
  if (!cfg) return code;
  return contest::cli::run(*cfg, std::cout, std::cerr);
}
