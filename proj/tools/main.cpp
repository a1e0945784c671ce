#include <iostream>

#include "thermowit/cli.hpp"

int main(int argc, char** argv) { return thermowit::run_cli(argc, argv, std::cout, std::cerr); }
