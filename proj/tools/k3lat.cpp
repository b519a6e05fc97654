#include <iostream>

#include "k3lat/cli.hpp"

int main(int argc, char** argv) { return k3lat::run_cli(argc, argv, std::cout, std::cerr); }
