#include <iostream>

#include "windings/cli.hpp"

int main(int argc, char** argv) { return windings::run_cli(argc, argv, std::cout, std::cerr); }
