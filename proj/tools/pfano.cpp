#include <iostream>

#include "pfano/cli.hpp"

int main(int argc, char** argv) { return pfano::run_cli(argc, argv, std::cout, std::cerr); }
