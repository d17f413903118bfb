#include <iostream>

#include "fnls/cli.hpp"

int main(int argc, char** argv) { return fnls::run_cli(argc, argv, std::cout, std::cerr); }
