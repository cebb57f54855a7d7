#include <iostream>

#include "tunnelshift/cli.hpp"

int main(int argc, char** argv) { return tunnelshift::run_cli(argc, argv, std::cout, std::cerr); }
