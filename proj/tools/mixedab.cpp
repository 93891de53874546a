#include "mixedab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mixedab::cli::run_cli(argc, argv, std::cout, std::cerr); }
