#include <iostream>

#include "pvabm/cli.hpp"

int main(int argc, char** argv) { return pvabm::cli::cli_main(argc, argv, std::cout, std::cerr); }
