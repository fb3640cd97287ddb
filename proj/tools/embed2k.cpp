#include <iostream>

#include "embed2k/cli.hpp"

int main(int argc, char** argv) { return embed2k::cli::run(argc, argv, std::cout, std::cerr); }
