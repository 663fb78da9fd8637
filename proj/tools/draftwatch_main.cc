#include <iostream>

#include "draftwatch/cli/commands.hpp"

int main(int argc, char** argv) { return draftwatch::cli::Run(argc, argv, std::cout, std::cerr); }
