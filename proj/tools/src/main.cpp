#include <iostream>

#include "progdist_cli/run.hpp"

int main(int argc, char** argv) { return progdist::cli::main_entry(argc, argv, std::cout, std::cerr); }
