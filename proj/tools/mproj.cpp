#include <iostream>

#include "mproj/cli/commands.hpp"

int main(int argc, char** argv) { return mproj::cli::main(argc, argv, std::cout, std::cerr); }
