#include <iostream>

#include "conical/cli.hpp"

int main(int argc, char** argv) { return conical::cli::run(argc, argv, std::cout, std::cerr); }
