#include <iostream>

#include "minvec_cli/commands.hpp"

int main(int argc, char** argv) { return minvec::cli::run_cli(argc, argv, std::cout, std::cerr); }
