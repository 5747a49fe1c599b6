#include <iostream>

#include "green/cli.hpp"

int main(int argc, char** argv) { return green::cli::run(argc, argv, std::cout, std::cerr); }
