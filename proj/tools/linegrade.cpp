#include <iostream>

#include "linegrade/cli/commands.hpp"

int main(int argc, char** argv) { return linegrade::cli::run(argc, argv, std::cout, std::cerr); }
