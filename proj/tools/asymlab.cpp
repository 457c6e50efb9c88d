#include <iostream>

#include "asymlab/cli.hpp"

int main(int argc, char** argv) { return asymlab::cli::run(argc, argv, std::cout, std::cerr); }
