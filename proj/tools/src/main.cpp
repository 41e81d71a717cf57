#include <iostream>

#include "semicech/cli.hpp"

int main(int argc, char** argv) { return semicech::cli::run(argc, argv, std::cout, std::cerr); }
