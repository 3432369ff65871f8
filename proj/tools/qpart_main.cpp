#include <iostream>

#include "qpart/cli.hpp"

int main(int argc, char** argv) { return qpart::run_cli(argc, argv, std::cout, std::cerr); }
