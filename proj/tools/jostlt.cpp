#include <iostream>

#include "jostlt/cli.hpp"

int main(int argc, char** argv) { return jostlt::cli::main_entry(argc, argv, std::cout, std::cerr); }
