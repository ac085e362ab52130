#include <iostream>

#include "bmtk/cli.hpp"

int main(int argc, char** argv) { return bmtk::run_command(argc, argv, std::cout, std::cerr); }
