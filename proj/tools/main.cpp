#include <iostream>

#include "homest/cli.hpp"

int main(int argc, char** argv) { return homest::run_cli(argc, argv, std::cout, std::cerr); }
