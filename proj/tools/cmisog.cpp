#include <iostream>

#include "cmisog/cli.hpp"

int main(int argc, char** argv) { return cmisog::cli::run(argc, argv, std::cout, std::cerr); }
