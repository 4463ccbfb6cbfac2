#include "e8/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return e8::run_cli(argc, argv, std::cout, std::cerr); }
