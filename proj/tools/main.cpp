#include <iostream>

#include "hotpotato/cli.hpp"

int main(int argc, char** argv) {
  auto parsed = hotpotato::cli::parse_command_line(argc, argv, std::cout, std::cerr);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  return hotpotato::cli::run(std::get<hotpotato::cli::RunConfig>(parsed), std::cout, std::cerr);
}
