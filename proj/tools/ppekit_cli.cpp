#include <iostream>

#include "ppekit/cli.hpp"

int main(int argc, char** argv) { return ppekit::run_cli(argc, argv, std::cout, std::cerr); }
