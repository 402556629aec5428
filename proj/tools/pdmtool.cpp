#include <iostream>

#include "pdm/commands.hpp"

int main(int argc, char** argv) { return pdm::cli::run_cli(argc, argv, std::cout, std::cerr); }
