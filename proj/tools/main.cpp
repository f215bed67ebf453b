#include <iostream>

#include "phasedetect/cli.hpp"

int main(int argc, char** argv) { return phasedetect::cli::run(argc, argv, std::cout, std::cerr); }
