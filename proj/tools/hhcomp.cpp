#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return hh::cli::hhcomp_main(argc, argv, std::cout, std::cerr); }
