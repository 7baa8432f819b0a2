#include <iostream>

#include "wrightstab/cli/commands.hpp"

int main(int argc, char** argv) { return wrightstab::cli::run(argc, argv, std::cout, std::cerr); }
