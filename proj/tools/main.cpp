#include <iostream>

#include "crpinv/cli.hpp"

int main(int argc, char** argv) { return crpinv::run_cli(argc, argv, std::cout, std::cerr); }
