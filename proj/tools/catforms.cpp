#include <iostream>

#include "catforms/cli.hpp"

int main(int argc, char** argv) { return catforms::cli::run(argc, argv, std::cout, std::cerr); }
