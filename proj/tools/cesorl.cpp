#include <iostream>

#include "cesorl/cli.hpp"

int main(int argc, char** argv) { return cesorl::run_cli(argc, argv, std::cout, std::cerr); }
