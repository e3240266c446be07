#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hairsynth::cli::cli_main(argc, argv, std::cout, std::cerr); }
