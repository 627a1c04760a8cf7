#include <iostream>

#include "sqz/cli/runs.hpp"

int main(int argc, char** argv) { return sqz::cli::main_entry(argc, argv, std::cout, std::cerr); }
