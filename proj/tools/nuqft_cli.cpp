#include "nuqft/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nuqft::cli::run(argc, argv, std::cout, std::cerr); }
